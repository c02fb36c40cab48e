//! Inequality-chain checks over a space's constant estimates: every bound
//! relating the greedy, conservative and truncation constants is evaluated
//! as a pass/fail record with its margin.
//!
//! Both sides of each record are built from certified lower bounds, so a
//! comparison is only sound when the grid is closed enough for witness
//! transport; records are gated on `closure_ok` accordingly.

use alloc::string::String;
use alloc::vec::Vec;

use crate::constants::{ConstantKind, EstimateSet};
use crate::spaces::{eta_p, geom_constants, powp};
use crate::{Field, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One checked inequality `lhs <= rhs` (or equality, where noted by id).
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct InequalityRecord {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub status: Status,
    pub closure_ok: bool,
}

/// `lhs <= rhs` up to additive slack `1e-9 * max(1, rhs)`.
pub const TOL: f64 = 1e-9;

fn record(id: &str, lhs: f64, rhs: f64, closure_ok: bool) -> InequalityRecord {
    let status = if !closure_ok {
        Status::NotApplicable
    } else if lhs <= rhs + TOL * rhs.max(1.0) {
        Status::Pass
    } else {
        Status::Fail
    };
    InequalityRecord {
        id: id.into(),
        lhs,
        rhs,
        margin: rhs - lhs,
        status,
        closure_ok,
    }
}

fn not_applicable(id: &str) -> InequalityRecord {
    InequalityRecord {
        id: id.into(),
        lhs: 0.0,
        rhs: 0.0,
        margin: 0.0,
        status: Status::NotApplicable,
        closure_ok: false,
    }
}

fn value_or_na(
    estimates: &EstimateSet,
    kind: ConstantKind,
) -> core::result::Result<f64, ()> {
    match estimates.get(kind) {
        Some(e) if e.witness.is_some() && e.value > 0.0 => Ok(e.value),
        _ => Err(()),
    }
}

macro_rules! need {
    ($estimates:expr, $kind:expr, $id:expr, $out:expr) => {
        match value_or_na($estimates, $kind) {
            Ok(v) => v,
            Err(()) => {
                $out.push(not_applicable($id));
                return Ok($out);
            }
        }
    };
}

/// Conservative-like chains: `Delta_s <= Delta_pl`,
/// `C_ql <= (1 + Delta_pl^p)^{1/p}`,
/// `Delta_pl <= (1 + (1 + Delta_s^p) C_ql^p)^{1/p}`, and the sandwich
/// `Delta_pl <= C_three <= A_p Delta_pl` (two one-sided records).
pub fn check_prop_3_7(
    estimates: &EstimateSet,
    p: f64,
    closure_ok: bool,
) -> Result<Vec<InequalityRecord>> {
    let mut out = Vec::new();
    let delta_s = need!(estimates, ConstantKind::DeltaS, "prop_3_7", out);
    let delta_pl = need!(estimates, ConstantKind::DeltaPl, "prop_3_7", out);
    let c_ql = need!(estimates, ConstantKind::Cql, "prop_3_7", out);
    let c_three = need!(estimates, ConstantKind::CThree, "prop_3_7", out);
    let a_p = geom_constants(p, Field::Real)?.a_p;

    out.push(record("prop_3_7_b_ds_le_dpl", delta_s, delta_pl, closure_ok));
    out.push(record(
        "prop_3_7_b_cql_bound",
        c_ql,
        powp(1.0 + powp(delta_pl, p), 1.0 / p),
        closure_ok,
    ));
    out.push(record(
        "prop_3_7_b_dpl_bound",
        delta_pl,
        powp(1.0 + (1.0 + powp(delta_s, p)) * powp(c_ql, p), 1.0 / p),
        closure_ok,
    ));
    out.push(record("prop_3_7_a_dpl_le_c", delta_pl, c_three, closure_ok));
    out.push(record("prop_3_7_a_c_le_ap_dpl", c_three, a_p * delta_pl, closure_ok));
    Ok(out)
}

/// Characterization chains: `C_pg <= A_p Delta_pl Gamma_t`,
/// `C_qg <= 2^{1/p} C_pg`, `Delta_pl <= C_pg`.
pub fn check_thm_4_2(
    estimates: &EstimateSet,
    p: f64,
    closure_ok: bool,
) -> Result<Vec<InequalityRecord>> {
    let mut out = Vec::new();
    let c_pg = need!(estimates, ConstantKind::Cpg, "thm_4_2", out);
    let c_qg = need!(estimates, ConstantKind::Cqg, "thm_4_2", out);
    let delta_pl = need!(estimates, ConstantKind::DeltaPl, "thm_4_2", out);
    let gamma_t = need!(estimates, ConstantKind::GammaT, "thm_4_2", out);
    let a_p = geom_constants(p, Field::Real)?.a_p;

    out.push(record("thm_4_2_cpg_bound", c_pg, a_p * delta_pl * gamma_t, closure_ok));
    out.push(record(
        "thm_4_2_cqg_bound",
        c_qg,
        libm::pow(2.0, 1.0 / p) * c_pg,
        closure_ok,
    ));
    out.push(record("thm_4_2_dpl_le_cpg", delta_pl, c_pg, closure_ok));
    Ok(out)
}

/// Equality of the two independently searched functionals: `D = C_pg`.
pub fn check_thm_4_1(estimates: &EstimateSet, closure_ok: bool) -> Result<InequalityRecord> {
    let d = value_or_na(estimates, ConstantKind::D);
    let c_pg = value_or_na(estimates, ConstantKind::Cpg);
    let (d, c_pg) = match (d, c_pg) {
        (Ok(d), Ok(c)) => (d, c),
        _ => return Ok(not_applicable("thm_4_1_d_eq_cpg")),
    };
    let status = if !closure_ok {
        Status::NotApplicable
    } else if libm::fabs(d - c_pg) <= TOL * c_pg.max(1.0) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(InequalityRecord {
        id: "thm_4_1_d_eq_cpg".into(),
        lhs: d,
        rhs: c_pg,
        margin: c_pg - d,
        status,
        closure_ok,
    })
}

/// Quasi-greedy-based upper bounds on `C_pg`:
/// i)  `C_pg <= C_qg (1 + (A_p B_p Delta C_qg eta_p(C_qg))^p)^{1/p}`,
/// ii) `C_pg <= C_qg (1 + (A_p Delta_s eta_p(C_qg))^p)^{1/p}`,
/// iii) `C_pg <= A_p Delta_pl C_qg (1 + C^p eta_p^p(C_qg))^{1/p}` — evaluated
/// both with `C = C_pg` (as printed) and with `C = C_qg` (the variant
/// suggested by the truncation-operator bound); both records are emitted.
pub fn check_thm_4_3(
    estimates: &EstimateSet,
    p: f64,
    field: Field,
    closure_ok: bool,
) -> Result<Vec<InequalityRecord>> {
    let mut out = Vec::new();
    let c_pg = need!(estimates, ConstantKind::Cpg, "thm_4_3", out);
    let c_qg = need!(estimates, ConstantKind::Cqg, "thm_4_3", out);
    let delta = need!(estimates, ConstantKind::Delta, "thm_4_3", out);
    let delta_s = need!(estimates, ConstantKind::DeltaS, "thm_4_3", out);
    let delta_pl = need!(estimates, ConstantKind::DeltaPl, "thm_4_3", out);
    let geom = geom_constants(p, field)?;
    let eta = eta_p(p, c_qg)?;

    let rhs_i = c_qg
        * powp(
            1.0 + powp(geom.a_p * geom.b_p * delta * c_qg * eta, p),
            1.0 / p,
        );
    out.push(record("thm_4_3_i", c_pg, rhs_i, closure_ok));

    let rhs_ii = c_qg * powp(1.0 + powp(geom.a_p * delta_s * eta, p), 1.0 / p);
    out.push(record("thm_4_3_ii", c_pg, rhs_ii, closure_ok));

    let rhs_iii = geom.a_p * delta_pl * c_qg * powp(1.0 + powp(c_pg * eta, p), 1.0 / p);
    out.push(record("thm_4_3_iii", c_pg, rhs_iii, closure_ok));

    let rhs_iii_v = geom.a_p * delta_pl * c_qg * powp(1.0 + powp(c_qg * eta, p), 1.0 / p);
    out.push(record("thm_4_3_iii_qg_variant", c_pg, rhs_iii_v, closure_ok));
    Ok(out)
}

/// Truncation-operator bounds: `Gamma_u <= C_qg^2 eta_p(C_qg)` and
/// `Gamma_t <= C_qg (1 + C_qg^p eta_p^p(C_qg))^{1/p}`.
pub fn check_thm_3_6(
    estimates: &EstimateSet,
    p: f64,
    closure_ok: bool,
) -> Result<Vec<InequalityRecord>> {
    let mut out = Vec::new();
    let gamma_u = need!(estimates, ConstantKind::GammaU, "thm_3_6", out);
    let gamma_t = need!(estimates, ConstantKind::GammaT, "thm_3_6", out);
    let c_qg = need!(estimates, ConstantKind::Cqg, "thm_3_6", out);
    let eta = eta_p(p, c_qg)?;

    out.push(record("thm_3_6_gamma_u", gamma_u, c_qg * c_qg * eta, closure_ok));
    out.push(record(
        "thm_3_6_gamma_t",
        gamma_t,
        c_qg * powp(1.0 + powp(c_qg * eta, p), 1.0 / p),
        closure_ok,
    ));
    Ok(out)
}

/// Run every checker, producing the full ledger in a fixed order.
pub fn check_all(
    estimates: &EstimateSet,
    p: f64,
    field: Field,
    closure_ok: bool,
) -> Result<Vec<InequalityRecord>> {
    let mut out = Vec::new();
    out.extend(check_thm_3_6(estimates, p, closure_ok)?);
    out.extend(check_prop_3_7(estimates, p, closure_ok)?);
    out.push(check_thm_4_1(estimates, closure_ok)?);
    out.extend(check_thm_4_2(estimates, p, closure_ok)?);
    out.extend(check_thm_4_3(estimates, p, field, closure_ok)?);
    Ok(out)
}

/// `true` iff no record failed (not-applicable records do not fail a run).
pub fn all_pass(records: &[InequalityRecord]) -> bool {
    records.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ConstantEstimate, Witness};

    fn unit_estimates() -> EstimateSet {
        let mut set = EstimateSet::default();
        for kind in ConstantKind::ALL {
            set.insert(ConstantEstimate {
                kind,
                value: 1.0,
                witness: Some(Witness {
                    f: None,
                    z: None,
                    set_a: None,
                    set_b: None,
                    sign_a: None,
                    sign_b: None,
                    k: None,
                    lhs: 1.0,
                    rhs: 1.0,
                }),
                grid_hash: "test".into(),
                note: None,
            });
        }
        set
    }

    #[test]
    fn unit_constants_pass_everything_at_p_1() {
        let est = unit_estimates();
        let records = check_all(&est, 1.0, Field::Real, true).unwrap();
        assert!(all_pass(&records));
        assert_eq!(records.len(), 2 + 5 + 1 + 3 + 4);
    }

    #[test]
    fn thm_4_3_hand_values_on_unit_constants() {
        // eta_1(1) = 3 + 2 sqrt(2); i) rhs = 1 + eta, since A_1 = 1, B_1 = 2,
        // all estimated constants 1: rhs_i = 1*(1 + 2*eta).
        let est = unit_estimates();
        let recs = check_thm_4_3(&est, 1.0, Field::Real, true).unwrap();
        let eta = eta_p(1.0, 1.0).unwrap();
        let i = recs.iter().find(|r| r.id == "thm_4_3_i").unwrap();
        assert!((i.rhs - (1.0 + 2.0 * eta)).abs() < 1e-9);
        assert!((i.rhs - 12.656854).abs() < 1e-5);
        let ii = recs.iter().find(|r| r.id == "thm_4_3_ii").unwrap();
        assert!((ii.rhs - (1.0 + eta)).abs() < 1e-9);
    }

    #[test]
    fn closure_gate_yields_not_applicable() {
        let est = unit_estimates();
        let r = check_thm_4_1(&est, false).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
    }

    #[test]
    fn missing_estimate_yields_not_applicable() {
        let est = EstimateSet::default();
        let recs = check_prop_3_7(&est, 1.0, true).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].status, Status::NotApplicable);
    }

    #[test]
    fn failing_record_is_reported() {
        let mut est = unit_estimates();
        // An impossible Gamma_u lower bound must surface as FAIL.
        est.insert(ConstantEstimate {
            kind: ConstantKind::GammaU,
            value: 100.0,
            witness: est.get(ConstantKind::GammaU).unwrap().witness.clone(),
            grid_hash: "test".into(),
            note: None,
        });
        let recs = check_thm_3_6(&est, 1.0, true).unwrap();
        assert_eq!(recs[0].status, Status::Fail);
        assert!(!all_pass(&recs));
    }
}
