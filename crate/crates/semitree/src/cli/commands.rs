use num_complex::Complex64;

use super::output::{complex_cells, Cell, Table};
use super::{CliError, RunArgs};
use crate::kernels::{self, endpoints};
use crate::oracle::{f_series, monte_carlo_hitting};
use crate::spectra::{self, Exponent, LpRange, Verdict, ZeroStatus};
use crate::spherical::{self, ArcTable};
use crate::tree::horospherical_index;
use crate::{tol, Error, Parity, TreeParams};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const DEFAULT_DEPTH: usize = 12;

fn header(t: &mut Table, params: &TreeParams) {
    let e = endpoints(params);
    t.meta("q_plus", params.q_plus()).meta("q_minus", params.q_minus()).meta("a", e.a).meta("b", e.b);
}

fn p_cell(p: Exponent) -> Cell {
    if p.value().is_infinite() {
        Cell::Text("inf".into())
    } else {
        Cell::Real(p.value())
    }
}

fn zero_note(params: &TreeParams, p: Exponent) -> String {
    let q = spectra::membership(params, p, Complex64::new(0.0, 0.0));
    match q.zero_status {
        ZeroStatus::Isolated => "gamma=0 is an isolated eigenvalue outside the plotted region".into(),
        ZeroStatus::UndeterminedByPaper => "membership of gamma=0 outside the plotted region is undetermined".into(),
        ZeroStatus::NotApplicable if q.verdict == Verdict::Outside => "gamma=0 is not in the spectrum".into(),
        ZeroStatus::NotApplicable => "gamma=0 lies in the plotted region".into(),
    }
}

pub fn spectrum(run: &RunArgs) -> Result<Table, CliError> {
    let params = run.params()?;
    let mut t = Table::new(
        "spectrum",
        &[
            "theta",
            "re_gamma2",
            "im_gamma2",
            "re_gamma_sheet1",
            "im_gamma_sheet1",
            "re_gamma_sheet2",
            "im_gamma_sheet2",
        ],
    );
    header(&mut t, &params);
    t.meta("p", p_cell(run.p))
        .meta("rho_p", spectra::spectral_radius(&params, run.p))
        .meta("connected", spectra::is_connected(&params, run.p));
    t.notes.push(zero_note(&params, run.p));
    for bp in spectra::boundary_curve(&params, run.p, run.samples)? {
        let mut row = vec![bp.theta.into()];
        for z in [bp.gamma2, bp.sheet1, bp.sheet2] {
            complex_cells(&mut row, Some(z));
        }
        t.push(row);
    }
    Ok(t)
}

pub fn radius_curve(run: &RunArgs) -> Result<Table, CliError> {
    let params = run.params()?;
    let mut t = Table::new("radius-curve", &["p", "inv_p", "rho"]);
    header(&mut t, &params);
    t.meta("split_exponent", spectra::split_exponent(&params));
    let last = (run.samples - 1) as f64;
    let mut invs: Vec<f64> = (0..run.samples).rev().map(|k| k as f64 / last).collect();
    // the minimum b sits at 1/p = ½, which an even grid would miss
    if run.samples % 2 == 0 {
        invs.insert(run.samples / 2, 0.5);
    }
    for inv in invs {
        let p = Exponent::new(if inv == 0.0 { f64::INFINITY } else { 1.0 / inv })?;
        t.push(vec![p_cell(p), inv.into(), spectra::spectral_radius(&params, p).into()]);
    }
    Ok(t)
}

pub fn spherical(run: &RunArgs) -> Result<Table, CliError> {
    let params = run.params()?;
    let depth = run.depth.unwrap_or(DEFAULT_DEPTH);
    let g = run.gamma;
    let mut t = Table::new(
        "spherical",
        &["n", "re_closed", "im_closed", "re_recurrence", "im_recurrence", "re_arc_sum", "im_arc_sum", "max_dev"],
    );
    header(&mut t, &params);
    t.meta("re_gamma", g.re).meta("im_gamma", g.im).meta("on_cut", kernels::on_cut(&params, g));
    let closed = spherical::closed_form_profile(&params, g, depth).ok();
    let rec = spherical::recurrence_eval(&params, g, depth);
    let table = ArcTable::new(&params, depth);
    let arc = spherical::arc_sum_profile(&params, &table, g, depth).ok();
    if closed.is_none() {
        t.notes.push("closed form unavailable at this gamma".into());
    }
    if arc.is_none() {
        t.notes.push("arc sum unavailable at this gamma".into());
    }
    for n in 0..=depth {
        let vals = [
            closed.as_ref().map(|p| p.values[n]),
            Some(rec.values[n]),
            arc.as_ref().map(|p| p.values[n]),
        ];
        let mut row = vec![n.into()];
        for v in vals {
            complex_cells(&mut row, v);
        }
        let present: Vec<Complex64> = vals.iter().flatten().copied().collect();
        let mut dev = 0.0f64;
        for i in 0..present.len() {
            for j in i + 1..present.len() {
                dev = dev.max(tol::rel_diff(present[i], present[j]));
            }
        }
        row.push(dev.into());
        t.push(row);
    }
    Ok(t)
}

pub fn hitting(run: &RunArgs) -> Result<Table, CliError> {
    let params = run.params()?;
    let g = run.gamma;
    let mut t = Table::new(
        "hitting",
        &[
            "sign",
            "re_f",
            "im_f",
            "re_ft",
            "im_ft",
            "re_series",
            "im_series",
            "series_tail_bound",
            "mc_estimate",
            "mc_std_error",
            "mc_unabsorbed",
            "mc_escaped",
        ],
    );
    header(&mut t, &params);
    t.meta("re_gamma", g.re)
        .meta("im_gamma", g.im)
        .meta("terms", run.terms)
        .meta("walks", run.walks)
        .meta("cap", run.cap)
        .meta("seed", run.seed);
    let bd = if kernels::on_cut(&params, g) {
        t.notes.push("gamma on a cut: boundary values from the upper half-plane".into());
        Some(kernels::branch_data_limit(&params, g))
    } else {
        kernels::branch_data(&params, g).ok()
    };
    let series_ok = g.norm() > endpoints(&params).b;
    if !series_ok {
        t.notes.push("series omitted: |gamma| <= b".into());
    }
    if g != ONE {
        t.notes.push("monte carlo omitted: walks estimate the value at gamma=1 only".into());
    }
    for sign in [Parity::Plus, Parity::Minus] {
        let mut row: Vec<Cell> = vec![sign.to_string().into()];
        complex_cells(&mut row, bd.as_ref().and_then(|b| b.f(sign)));
        complex_cells(&mut row, bd.as_ref().and_then(|b| b.ft(sign)));
        // F^σ is the first-passage series towards a neighbour of the other class
        let s = if series_ok { Some(f_series(&params, sign.flip(), g, run.terms)?) } else { None };
        complex_cells(&mut row, s.as_ref().map(|s| s.partial_sum));
        row.push(s.as_ref().map(|s| s.tail_bound).into());
        if g == ONE {
            let mc = monte_carlo_hitting(&params, sign, run.walks, run.cap, run.seed);
            row.extend([mc.estimate.into(), mc.std_error.into(), mc.unabsorbed.into(), mc.escaped.into()]);
        } else {
            row.extend([Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing]);
        }
        t.push(row);
    }
    Ok(t)
}

pub fn poisson(run: &RunArgs) -> Result<Table, CliError> {
    let params = run.params()?;
    let depth = run.depth.unwrap_or(DEFAULT_DEPTH);
    let g = run.gamma;
    let mut t = Table::new(
        "poisson",
        &["n", "k", "h", "class", "harmonic", "re_generalized", "im_generalized", "re_alternative", "im_alternative"],
    );
    header(&mut t, &params);
    t.meta("re_gamma", g.re).meta("im_gamma", g.im);
    for n in 0..=depth {
        let class = params.root_parity().at_distance(n);
        for k in 0..=n {
            let h = horospherical_index(k, n);
            let mut row = vec![n.into(), k.into(), h.into(), class.to_string().into()];
            row.push(kernels::poisson_kernel(&params, n, k).into());
            complex_cells(&mut row, kernels::generalized_poisson(&params, class, h, g).ok());
            complex_cells(&mut row, kernels::alt_generalized_poisson(&params, class, h, g).ok());
            t.push(row);
        }
    }
    Ok(t)
}

pub fn zmap(run: &RunArgs) -> Result<Table, CliError> {
    let params = run.params()?;
    let g = run.gamma;
    let mut t = Table::new(
        "zmap",
        &[
            "re_gamma",
            "im_gamma",
            "re_z",
            "im_z",
            "re_gamma2_of_z",
            "im_gamma2_of_z",
            "roundtrip_residual",
            "re_mu2_eigenvalue_plus",
            "im_mu2_eigenvalue_plus",
            "re_mu2_eigenvalue_minus",
            "im_mu2_eigenvalue_minus",
        ],
    );
    header(&mut t, &params);
    let z = match spherical::z_of_gamma(&params, g) {
        Ok(z) => z,
        Err(Error::OnCut(_)) => {
            let b = kernels::branch_data_limit(&params, g).bt;
            t.notes.push("gamma on a cut: z from the upper half-plane limit".into());
            (b * params.qq()).ln() / (2.0 * params.qq().ln())
        }
        Err(e) => return Err(e.into()),
    };
    let back = spherical::gamma_squared_of_z(&params, z);
    let mut row = vec![g.re.into(), g.im.into()];
    complex_cells(&mut row, Some(z));
    complex_cells(&mut row, Some(back));
    row.push(((back - g * g).norm() / (1.0 + (g * g).norm())).into());
    complex_cells(&mut row, Some(spectra::gamma_of_z(&params, z, Parity::Plus)));
    complex_cells(&mut row, Some(spectra::gamma_of_z(&params, z, Parity::Minus)));
    t.push(row);
    Ok(t)
}

/// The snake_case serde name of a unit variant.
fn tag(v: &impl serde::Serialize) -> Cell {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(Cell::from)).unwrap_or(Cell::Missing)
}

pub fn classify(run: &RunArgs) -> Result<Table, CliError> {
    let params = run.params()?;
    let (g, p) = (run.gamma, run.p);
    let mut t = Table::new(
        "classify",
        &[
            "p",
            "re_gamma",
            "im_gamma",
            "verdict",
            "isolated_zero",
            "zero_status",
            "spherical_lp_range",
            "spherical_lp_threshold",
            "spherical_in_lp",
            "spectral_radius",
            "connected",
            "re_sigma_center",
            "sigma_semi_axis_real",
            "sigma_semi_axis_imag",
        ],
    );
    header(&mut t, &params);
    t.meta("p_crit", spectra::p_crit(&params)).meta("split_exponent", spectra::split_exponent(&params));
    let q = spectra::membership(&params, p, g);
    let lp = spectra::lp_range_of_spherical(&params, g).ok();
    let kind = match lp {
        Some(LpRange::Empty) => Cell::from("empty"),
        Some(LpRange::BoundedOnly) => Cell::from("bounded_only"),
        Some(LpRange::Above(_)) => Cell::from("above"),
        None => Cell::Missing,
    };
    let region = spectra::sigma_p(&params, p);
    t.push(vec![
        p_cell(p),
        g.re.into(),
        g.im.into(),
        tag(&q.verdict),
        q.includes_isolated_zero.into(),
        tag(&q.zero_status),
        kind,
        lp.and_then(|l| l.threshold()).into(),
        lp.map_or(Cell::Missing, |l| l.contains(p).into()),
        spectra::spectral_radius(&params, p).into(),
        spectra::is_connected(&params, p).into(),
        region.center.re.into(),
        region.semi_axis_real.into(),
        region.semi_axis_imag.into(),
    ]);
    Ok(t)
}
