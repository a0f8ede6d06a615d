//! Batch experiment runners behind the CLI: reproducible reports with the
//! full config embedded, CSV/JSON emission carrying identical data, and a
//! bounded worker pool whose fan-out never changes a value, only wall time.

use std::collections::VecDeque;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::abc::{check_imprimitive_bound, check_rad_lower_bound, holds_from, orbit_abc_triple};
use crate::dynamics::{
    detect_periodicity, iterate, nu, taunec_family, OrbitVerdict, UnicriticalMap,
    DEFAULT_PERIODICITY_STEPS,
};
use crate::error::{Error, Result};
use crate::galois::{
    tower_report, verify_example_family, LevelVerdict, StabilityOutcome,
};
use crate::heights::{canonical_height, weil_height, BoundCheckConfig};
use crate::numfield::{FieldElement, NumberField};
use crate::primdiv::{zsigmondy_set_cached, FactorBudget, FactorCache, FactorStatus};
use crate::util::decimal_digits;

/// Everything that determines a run; serialized verbatim into every report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentConfig {
    pub command: String,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub map: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i_max: Option<usize>,
    pub n_min: usize,
    pub n_max: usize,
    pub bounds: BoundCheckConfig,
    pub budget: FactorBudget,
    pub jobs: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(command: &str) -> Self {
        ExperimentConfig {
            command: command.into(),
            field: "Q".into(),
            map: None,
            alpha: None,
            family: None,
            base: None,
            degree: None,
            i_max: None,
            n_min: 2,
            n_max: 8,
            bounds: BoundCheckConfig::default(),
            budget: FactorBudget::default(),
            jobs: 1,
            seed: 0,
        }
    }

    pub fn parse_field(&self) -> Result<NumberField> {
        self.field.parse()
    }

    pub fn parse_map(&self) -> Result<UnicriticalMap> {
        let field = self.parse_field()?;
        let spec = self
            .map
            .as_ref()
            .ok_or_else(|| Error::Parse("missing --map".into()))?;
        UnicriticalMap::parse(field, spec)
    }

    pub fn parse_alpha(&self) -> Result<FieldElement> {
        let field = self.parse_field()?;
        let spec = self
            .alpha
            .as_ref()
            .ok_or_else(|| Error::Parse("missing --alpha".into()))?;
        field.parse_element(spec)
    }
}

/// A finished report: config, version, typed rows, summary.
#[derive(Debug, Clone, Serialize)]
pub struct Report<R> {
    pub config: ExperimentConfig,
    pub version: String,
    pub rows: Vec<R>,
    pub summary: serde_json::Value,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

impl<R: Serialize> Report<R> {
    pub fn new(config: ExperimentConfig, rows: Vec<R>, summary: serde_json::Value) -> Self {
        Report { config, version: VERSION.into(), rows, summary }
    }

    /// One top-level object with "config", "version", "rows", "summary".
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Two comment lines (config and version as JSON), then an RFC-4180 body.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# config ");
        out.push_str(&serde_json::to_string(&self.config).expect("config serializes"));
        out.push('\n');
        out.push_str("# version ");
        out.push_str(VERSION);
        out.push('\n');
        out.push_str("# summary ");
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serializes"));
        out.push('\n');
        let mut wtr = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            wtr.serialize(row).expect("row serializes");
        }
        out.push_str(&String::from_utf8(wtr.into_inner().expect("csv flush")).expect("utf8"));
        out
    }
}

/// Order-preserving bounded worker pool: results are identical to the
/// sequential map regardless of jobs or completion order.
pub fn parallel_map<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let queue: Mutex<VecDeque<(usize, T)>> = Mutex::new(items.into_iter().enumerate().collect());
    let results: Mutex<Vec<(usize, R)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let item = queue.lock().unwrap().pop_front();
                match item {
                    Some((idx, item)) => {
                        let r = f(item);
                        results.lock().unwrap().push((idx, r));
                    }
                    None => break,
                }
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(idx, _)| *idx);
    results.into_iter().map(|(_, r)| r).collect()
}

// ---- orbit ------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OrbitRow {
    pub n: usize,
    pub value: String,
    pub digits: usize,
    pub height: f64,
}

pub fn run_orbit(config: &ExperimentConfig) -> Result<Report<OrbitRow>> {
    let field = config.parse_field()?;
    let f = config.parse_map()?;
    let alpha = config.parse_alpha()?;
    let orbit = iterate(&f, &alpha, config.n_max);
    if orbit.overflow_at.is_some() {
        return Err(Error::OperandOverflow { level: orbit.len() });
    }
    let rows: Vec<OrbitRow> = orbit
        .values
        .iter()
        .enumerate()
        .map(|(n, v)| OrbitRow {
            n,
            value: v.to_string(),
            digits: element_digits(v),
            height: weil_height(&field, v).value,
        })
        .collect();
    let verdict = detect_periodicity(&f, &alpha, DEFAULT_PERIODICITY_STEPS);
    let (nu_val, log_plus_nu) = nu(&f);
    let canonical = match &verdict {
        OrbitVerdict::Preperiodic { .. } => canonical_height(&f, &alpha, config.n_max.max(8)),
        _ => canonical_height(&f, &alpha, config.n_max.max(1)),
    };
    let (est, err) = match canonical {
        Ok(h) => (Some(h.value), Some(h.error_bound)),
        Err(_) => (None, None),
    };
    let summary = serde_json::json!({
        "verdict": verdict.to_string(),
        "preperiodic": matches!(verdict, OrbitVerdict::Preperiodic { .. }),
        "canonical_estimate": est,
        "canonical_error_bound": err,
        "nu": nu_val,
        "log_plus_nu": log_plus_nu,
        "in_pd": f.in_pd(),
    });
    Ok(Report::new(config.clone(), rows, summary))
}

fn element_digits(x: &FieldElement) -> usize {
    [x.rational_part(), x.omega_part()]
        .iter()
        .flat_map(|q| [decimal_digits(q.numer()), decimal_digits(q.denom())])
        .max()
        .unwrap()
}

// ---- zsigmondy --------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ZsigmondyRow {
    pub n: usize,
    pub value_digits: usize,
    pub primitive_digits: Option<usize>,
    pub in_zsigmondy: bool,
    pub mult_one_witness: String,
    pub witness_certain: bool,
    pub status: String,
}

pub fn run_zsigmondy(config: &ExperimentConfig) -> Result<Report<ZsigmondyRow>> {
    let f = config.parse_map()?;
    let alpha = config.parse_alpha()?;
    let verdict = detect_periodicity(&f, &alpha, DEFAULT_PERIODICITY_STEPS);
    if let OrbitVerdict::Preperiodic { .. } = verdict {
        return Err(Error::PreperiodicOrbit);
    }
    let cache = FactorCache::new();
    let report = zsigmondy_set_cached(&f, &alpha, config.n_max, &config.budget, &cache)?;
    let rows: Vec<ZsigmondyRow> = report
        .levels
        .iter()
        .map(|l| ZsigmondyRow {
            n: l.n,
            value_digits: element_digits(&l.value),
            primitive_digits: l.primitive_content.as_ref().map(element_digits),
            in_zsigmondy: l.in_zsigmondy,
            mult_one_witness: l
                .mult_one_witness
                .as_ref()
                .map(|p| p.generator().to_string())
                .unwrap_or_default(),
            witness_certain: l.witness_certain,
            status: status_str(l.status).into(),
        })
        .collect();
    let partial: Vec<usize> = report
        .levels
        .iter()
        .filter(|l| l.status == FactorStatus::Partial)
        .map(|l| l.n)
        .collect();
    let orbit = iterate(&f, &alpha, 1);
    let summary = serde_json::json!({
        "zsigmondy_set": report.members(),
        "partial_levels": partial,
        "orbit_verdict": verdict.to_string(),
        "level_one_value": orbit.values.get(1).map(|v| v.to_string()),
        "truncated_at": report.truncated_at,
    });
    Ok(Report::new(config.clone(), rows, summary))
}

fn status_str(s: FactorStatus) -> &'static str {
    match s {
        FactorStatus::Exact => "exact",
        FactorStatus::Partial => "partial",
    }
}

// ---- family scan -------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FamilyScanRow {
    pub n: usize,
    pub gamma: String,
    pub c: String,
    pub in_pd: bool,
    pub nu: f64,
    pub log_plus_nu: f64,
    pub zsig_contains_n: bool,
    pub log_inequality_ok: bool,
}

/// Least-squares fit of the scan points (log^+ nu, N).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FitReport {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub reference_slope: f64,
}

pub fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    if points.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let var: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    let slope = cov / var;
    (slope, mean_y - slope * mean_x)
}

pub fn run_family_scan(config: &ExperimentConfig) -> Result<Report<FamilyScanRow>> {
    let field = config.parse_field()?;
    let degree = config.degree.unwrap_or(2);
    let base_spec = config.base.clone().unwrap_or_else(|| "2".into());
    let base = field.parse_element(&base_spec)?;
    if config.n_min > config.n_max {
        return Err(Error::Parse(format!(
            "empty N range [{}, {}]",
            config.n_min, config.n_max
        )));
    }
    let ns: Vec<usize> = (config.n_min..=config.n_max).collect();
    let rows: Vec<Result<FamilyScanRow>> = parallel_map(config.jobs, ns, |n| {
        let f = taunec_family(field, degree, &base, n)?;
        let (nu_val, log_plus_nu) = nu(&f);
        let gamma = f.gamma.clone();
        let in_pd = f.in_pd();
        let zsig_contains_n = if in_pd {
            let report = crate::primdiv::zsigmondy_membership(&f, &gamma, n)?;
            report.level(n).map(|l| l.in_zsigmondy).unwrap_or(false)
        } else {
            false
        };
        let log_inequality_ok =
            log_plus_nu - std::f64::consts::LN_2 < n as f64 * (degree as f64).ln() + 1e-9;
        Ok(FamilyScanRow {
            n,
            gamma: f.gamma.to_string(),
            c: f.c.to_string(),
            in_pd,
            nu: nu_val,
            log_plus_nu,
            zsig_contains_n,
            log_inequality_ok,
        })
    });
    let rows: Vec<FamilyScanRow> = rows.into_iter().collect::<Result<_>>()?;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.in_pd)
        .map(|r| (r.log_plus_nu, r.n as f64))
        .collect();
    let (slope, intercept) = least_squares(&points);
    let fit = FitReport {
        points,
        slope,
        intercept,
        reference_slope: 1.0 / (degree as f64).ln(),
    };
    let summary = serde_json::json!({
        "fit": fit,
        "all_members_hit": rows.iter().filter(|r| r.in_pd).all(|r| r.zsig_contains_n),
        "all_log_inequalities_ok": rows.iter().all(|r| r.log_inequality_ok),
    });
    Ok(Report::new(config.clone(), rows, summary))
}

// ---- abc ----------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AbcRow {
    pub n: usize,
    pub a: String,
    pub b: String,
    pub s: String,
    pub h_proj: Option<f64>,
    pub rad: Option<f64>,
    pub quality: Option<f64>,
    pub rad_ok: Option<bool>,
    pub rad_margin: Option<f64>,
    pub imprimitive_ok: Option<bool>,
    pub imprimitive_margin: Option<f64>,
    pub status: String,
}

pub fn run_abc(config: &ExperimentConfig) -> Result<Report<AbcRow>> {
    let f = config.parse_map()?;
    let alpha = config.parse_alpha()?;
    let epsilon = config.bounds.epsilon;
    let delta = config.bounds.delta;
    let slack = config.bounds.slack;
    let budget = config.budget.clone();
    let ns: Vec<usize> = (config.n_min..=config.n_max).collect();
    let rows: Vec<AbcRow> = parallel_map(config.jobs, ns, |n| {
        match orbit_abc_triple(&f, &alpha, n, &budget) {
            Ok(t) => {
                let rad_out = check_rad_lower_bound(&f, &alpha, n, epsilon, &budget, slack);
                let imp_out = check_imprimitive_bound(&f, &alpha, n, delta, &budget, slack);
                let status = if rad_out.is_err() || imp_out.is_err() { "partial" } else { "ok" };
                AbcRow {
                    n,
                    a: t.a.to_string(),
                    b: t.b.to_string(),
                    s: t.s.to_string(),
                    h_proj: Some(t.h_proj),
                    rad: Some(t.rad),
                    quality: t.quality.is_finite().then_some(t.quality),
                    rad_ok: rad_out.as_ref().ok().map(|o| o.holds),
                    rad_margin: rad_out.as_ref().ok().map(|o| o.margin),
                    imprimitive_ok: imp_out.as_ref().ok().map(|o| o.holds),
                    imprimitive_margin: imp_out.as_ref().ok().map(|o| o.margin),
                    status: status.into(),
                }
            }
            Err(e) => AbcRow {
                n,
                a: String::new(),
                b: String::new(),
                s: String::new(),
                h_proj: None,
                rad: None,
                quality: None,
                rad_ok: None,
                rad_margin: None,
                imprimitive_ok: None,
                imprimitive_margin: None,
                status: match e {
                    Error::DegenerateTriple { part, .. } => format!("degenerate:{part}"),
                    Error::BudgetExceeded { .. } => "budget".into(),
                    other => format!("error:{other}"),
                },
            },
        }
    });
    let max_quality = rows
        .iter()
        .filter_map(|r| r.quality)
        .fold(f64::NEG_INFINITY, f64::max);
    let rad_hold: Vec<(usize, bool)> = rows
        .iter()
        .filter_map(|r| r.rad_ok.map(|ok| (r.n, ok)))
        .collect();
    let imp_hold: Vec<(usize, bool)> = rows
        .iter()
        .filter_map(|r| r.imprimitive_ok.map(|ok| (r.n, ok)))
        .collect();
    let summary = serde_json::json!({
        "max_quality": if max_quality.is_finite() { Some(max_quality) } else { None },
        "rad_holds_from": holds_from(&rad_hold),
        "imprimitive_holds_from": holds_from(&imp_hold),
        "epsilon": epsilon,
        "delta": delta,
    });
    Ok(Report::new(config.clone(), rows, summary))
}

// ---- galois ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GaloisRow {
    pub n: usize,
    pub stability: String,
    pub maximality: String,
    pub witness: String,
    pub disc: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FamilyRow {
    pub i: usize,
    pub gamma: String,
    pub c: String,
    pub conjugate_identity: bool,
    pub two_adic_ok: bool,
    pub congruence_ok: bool,
    pub disc_identity_ok: bool,
    pub square_in_k1: String,
    pub stable_up_to_12: bool,
    pub oracle_not_maximal: Option<bool>,
    pub not_maximal_witnessed: bool,
}

pub enum GaloisOutput {
    Tower(Report<GaloisRow>),
    Family(Report<FamilyRow>),
}

pub fn run_galois(config: &ExperimentConfig) -> Result<GaloisOutput> {
    if config.family.as_deref() == Some("example") {
        let i_max = config.i_max.unwrap_or(6);
        let checks = verify_example_family(i_max, &config.budget)?;
        let rows: Vec<FamilyRow> = checks
            .iter()
            .map(|c| FamilyRow {
                i: c.i,
                gamma: c.map.gamma.to_string(),
                c: c.map.c.to_string(),
                conjugate_identity: c.conjugate_identity,
                two_adic_ok: c.two_adic_ok,
                congruence_ok: c.congruence_ok,
                disc_identity_ok: c.disc_identity_ok,
                square_in_k1: c
                    .square_in_k1
                    .as_ref()
                    .map(|w| format!("{} + {}*sqrt({})", w.a, w.b, w.d))
                    .unwrap_or_default(),
                stable_up_to_12: c.stable_up_to_12,
                oracle_not_maximal: c.oracle_not_maximal,
                not_maximal_witnessed: c.conjugate_identity && c.square_in_k1.is_some(),
            })
            .collect();
        let summary = serde_json::json!({
            "all_identities_hold": checks.iter().all(|c| c.all_identities_hold()),
            "i_max": i_max,
        });
        return Ok(GaloisOutput::Family(Report::new(config.clone(), rows, summary)));
    }
    let f = config.parse_map()?;
    let report = tower_report(&f, config.n_max, &config.budget)?;
    let stability_label = |n: usize| -> String {
        match &report.stability {
            StabilityOutcome::StableUpTo(_) => "irreducible-so-far".into(),
            StabilityOutcome::Reducible => "reducible".into(),
            StabilityOutcome::SquareAt(k) => {
                if n < *k {
                    "irreducible-so-far".into()
                } else {
                    format!("failed({k})")
                }
            }
        }
    };
    let rows: Vec<GaloisRow> = report
        .levels
        .iter()
        .map(|l| {
            let (maximality, witness) = match &l.verdict {
                LevelVerdict::Maximal { witness } => {
                    ("maximal".to_string(), witness.generator().to_string())
                }
                LevelVerdict::MaximalByOracle => ("maximal-oracle".to_string(), String::new()),
                LevelVerdict::NotMaximal { square_root } => (
                    "not-maximal".to_string(),
                    format!(
                        "{} + {}*sqrt({})",
                        square_root.a, square_root.b, square_root.d
                    ),
                ),
                LevelVerdict::Inconclusive { budget_exhausted, reason } => (
                    if *budget_exhausted {
                        "inconclusive-budget".to_string()
                    } else {
                        "inconclusive".to_string()
                    },
                    reason.clone(),
                ),
            };
            GaloisRow {
                n: l.n,
                stability: stability_label(l.n),
                maximality,
                witness,
                disc: l.disc_value.as_ref().map(|d| d.to_string()).unwrap_or_default(),
            }
        })
        .collect();
    let summary = serde_json::json!({
        "stability": format!("{:?}", report.stability),
        "critical_orbit": report.critical_orbit_verdict.to_string(),
        "root_of_unity_ok": report.root_of_unity_ok,
        "maximal_levels": rows
            .iter()
            .filter(|r| r.maximality.starts_with("maximal"))
            .map(|r| r.n)
            .collect::<Vec<_>>(),
    });
    Ok(GaloisOutput::Tower(Report::new(config.clone(), rows, summary)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit_config() -> ExperimentConfig {
        let mut c = ExperimentConfig::new("orbit");
        c.map = Some("2;0;1".into());
        c.alpha = Some("0".into());
        c.n_max = 6;
        c
    }

    #[test]
    fn orbit_report() {
        let report = run_orbit(&orbit_config()).unwrap();
        assert_eq!(report.rows.len(), 7);
        assert_eq!(report.rows[6].value, "458330");
        assert!((report.rows[6].height - (458330f64).ln()).abs() < 1e-9);
        assert_eq!(report.summary["preperiodic"], serde_json::json!(false));
    }

    #[test]
    fn orbit_flags_preperiodic() {
        let mut c = ExperimentConfig::new("orbit");
        c.map = Some("2;0;-1".into());
        c.alpha = Some("0".into());
        c.n_max = 4;
        let report = run_orbit(&c).unwrap();
        assert_eq!(report.summary["preperiodic"], serde_json::json!(true));
    }

    #[test]
    fn gaussian_orbit_preperiodic() {
        let mut c = ExperimentConfig::new("orbit");
        c.field = "Qi".into();
        c.map = Some("2;0;i".into());
        c.alpha = Some("0".into());
        c.n_max = 4;
        let report = run_orbit(&c).unwrap();
        assert_eq!(report.summary["preperiodic"], serde_json::json!(true));
        assert_eq!(report.rows[2].value, "-1 + 1*w");
    }

    #[test]
    fn zsigmondy_report_and_refusal() {
        let mut c = ExperimentConfig::new("zsigmondy");
        c.map = Some("2;0;1".into());
        c.alpha = Some("0".into());
        c.n_max = 6;
        let report = run_zsigmondy(&c).unwrap();
        assert_eq!(report.rows.len(), 5);
        assert!(report.rows.iter().all(|r| !r.in_zsigmondy));
        assert_eq!(report.rows[0].mult_one_witness, "2");

        let mut c2 = c.clone();
        c2.map = Some("2;0;-1".into());
        assert!(matches!(run_zsigmondy(&c2), Err(Error::PreperiodicOrbit)));
    }

    #[test]
    fn family_scan_fit() {
        let mut c = ExperimentConfig::new("family-scan");
        c.base = Some("2".into());
        c.degree = Some(2);
        c.n_min = 2;
        c.n_max = 8;
        let report = run_family_scan(&c).unwrap();
        assert_eq!(report.rows.len(), 7);
        assert!(report.rows.iter().all(|r| r.zsig_contains_n));
        assert!(report.rows.iter().all(|r| r.log_inequality_ok));
        let fit: FitReport = serde_json::from_value(report.summary["fit"].clone()).unwrap();
        let reference = 1.0 / (2f64).ln();
        assert!(fit.slope > 0.8 * reference && fit.slope < 1.2 * reference);
        // empty range is a config error
        let mut bad = c.clone();
        bad.n_min = 9;
        bad.n_max = 8;
        assert!(matches!(run_family_scan(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn abc_report() {
        let mut c = ExperimentConfig::new("abc");
        c.map = Some("2;0;3".into());
        c.alpha = Some("0".into());
        c.n_min = 2;
        c.n_max = 6;
        c.bounds.epsilon = 0.5;
        c.bounds.delta = 0.25;
        let report = run_abc(&c).unwrap();
        assert_eq!(report.rows.len(), 5);
        for row in &report.rows {
            assert_eq!(row.status, "ok");
        }
        // both inequalities hold from n = 2 onward here; the acceptance gate
        // only demands n >= 3
        assert_eq!(report.summary["rad_holds_from"], serde_json::json!(2));
        assert!(report.rows.iter().skip(1).all(|r| r.rad_ok == Some(true)));
        assert!(report.rows.iter().skip(1).all(|r| r.imprimitive_ok == Some(true)));
    }

    #[test]
    fn abc_skips_degenerate_levels() {
        let mut c = ExperimentConfig::new("abc");
        c.map = Some("2;0;2".into());
        c.alpha = Some("0".into());
        c.n_min = 1;
        c.n_max = 4;
        let report = run_abc(&c).unwrap();
        assert!(report.rows[0].status.starts_with("degenerate"));
        assert_eq!(report.rows[1].status, "ok");
    }

    #[test]
    fn galois_tower_rows() {
        let mut c = ExperimentConfig::new("galois");
        c.map = Some("2;0;1".into());
        c.n_max = 5;
        match run_galois(&c).unwrap() {
            GaloisOutput::Tower(report) => {
                assert_eq!(report.rows.len(), 4);
                assert_eq!(report.rows[0].maximality, "maximal-oracle");
                for row in &report.rows[1..] {
                    assert_eq!(row.maximality, "maximal");
                }
                assert_eq!(report.rows[0].disc, "512");
            }
            _ => panic!("expected tower output"),
        }
        let mut red = c.clone();
        red.map = Some("2;0;-1".into());
        assert!(matches!(run_galois(&red), Err(Error::ReducibleBase)));
    }

    #[test]
    fn galois_family_rows() {
        let mut c = ExperimentConfig::new("galois");
        c.family = Some("example".into());
        c.i_max = Some(4);
        match run_galois(&c).unwrap() {
            GaloisOutput::Family(report) => {
                assert_eq!(report.rows.len(), 3);
                for row in &report.rows {
                    assert!(row.not_maximal_witnessed);
                }
                assert_eq!(report.rows[0].oracle_not_maximal, Some(true));
            }
            _ => panic!("expected family output"),
        }
    }

    #[test]
    fn reports_are_deterministic_and_jobs_invariant() {
        let mut c = ExperimentConfig::new("abc");
        c.map = Some("2;0;1".into());
        c.alpha = Some("0".into());
        c.n_min = 2;
        c.n_max = 7;
        let r1 = run_abc(&c).unwrap();
        let r2 = run_abc(&c).unwrap();
        assert_eq!(r1.to_json(), r2.to_json());
        assert_eq!(r1.to_csv(), r2.to_csv());
        let mut cj = c.clone();
        cj.jobs = 3;
        let r3 = run_abc(&cj).unwrap();
        assert_eq!(r1.rows, r3.rows);
    }

    #[test]
    fn csv_and_json_carry_identical_data() {
        let mut c = ExperimentConfig::new("zsigmondy");
        c.map = Some("2;0;1".into());
        c.alpha = Some("0".into());
        c.n_max = 6;
        let report = run_zsigmondy(&c).unwrap();
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let csv_text = report.to_csv();
        let mut lines = csv_text.lines();
        let config_line = lines.next().unwrap().strip_prefix("# config ").unwrap();
        let config_from_csv: ExperimentConfig = serde_json::from_str(config_line).unwrap();
        assert_eq!(config_from_csv, report.config);
        let body: String = csv_text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        let mut rdr = csv::Reader::from_reader(body.as_bytes());
        let rows_from_csv: Vec<ZsigmondyRow> =
            rdr.deserialize().collect::<std::result::Result<_, _>>().unwrap();
        assert_eq!(rows_from_csv, report.rows);
        assert_eq!(json["rows"].as_array().unwrap().len(), report.rows.len());
    }

    #[test]
    fn parallel_map_preserves_order() {
        let items: Vec<usize> = (0..100).collect();
        let seq: Vec<usize> = items.iter().map(|x| x * x).collect();
        let par = parallel_map(4, items, |x| x * x);
        assert_eq!(seq, par);
    }
}
