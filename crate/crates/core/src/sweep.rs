//! Batch classification over a parameter grid: every point is constructed,
//! measured and compared with the closed forms.

use rayon::prelude::*;
use serde::Serialize;

use crate::analyze::{min_distance_with, EnumOptions};
use crate::code::equal_codes;
use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::prm::{
    classify_with, construct, described_dual, dim_mr, dim_sorensen, ClassificationReport,
    HullPrediction, PrmParams,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub n_values: Vec<usize>,
    pub q_values: Vec<u32>,
    /// `None` means every proper degree `1..=n(q-1)`.
    pub k_values: Option<Vec<u32>>,
    /// Exhaustive distance is checked where `q^K` is at most this.
    pub distance_budget: u128,
    pub workers: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            n_values: vec![1, 2, 3],
            q_values: vec![2, 3, 4, 5, 7, 8, 9],
            k_values: None,
            distance_budget: 10_000_000,
            workers: 1,
        }
    }
}

impl SweepSpec {
    /// Grid points in `(n, q, k)` order.
    pub fn points(&self) -> Result<Vec<PrmParams>> {
        if self.n_values.is_empty() || self.q_values.is_empty() {
            return Err(Error::OutOfRange(
                "sweep needs at least one n and one q".into(),
            ));
        }
        if matches!(&self.k_values, Some(ks) if ks.is_empty()) {
            return Err(Error::OutOfRange("empty k list".into()));
        }
        if let Some(&q) = self
            .q_values
            .iter()
            .find(|&&q| prime_power(q as u64).is_none())
        {
            return Err(Error::NotPrimePower(q as u64));
        }
        let mut out = Vec::new();
        for &n in &self.n_values {
            for &q in &self.q_values {
                let base = PrmParams::new(n, 1, q)?;
                let top = base.top();
                let ks: Vec<u32> = match &self.k_values {
                    None => (1..=top).collect(),
                    Some(ks) => ks.iter().copied().filter(|&k| 1 <= k && k <= top).collect(),
                };
                out.extend(ks.into_iter().map(|k| base.with_k(k)));
            }
        }
        if out.is_empty() {
            return Err(Error::OutOfRange(
                "no k in 1..=n(q-1) for any grid point".into(),
            ));
        }
        Ok(out)
    }
}

/// Everything measured at one point.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    #[serde(flatten)]
    pub report: ClassificationReport,
    pub hull_case: Option<&'static str>,
    pub dim_mr: u64,
    pub rank: usize,
    pub dual_verified: bool,
    pub hull_dim_gram: usize,
    pub hull_dim_intersection: usize,
    pub hull_dim_dual: usize,
    /// Exhaustive minimum distance, when within the distance budget.
    pub min_distance: Option<usize>,
    pub ok: bool,
}

impl SweepRow {
    pub fn params(&self) -> PrmParams {
        self.report.params()
    }

    pub fn no_closed_form(&self) -> bool {
        self.report.predicted.hull_dim == HullPrediction::NoClosedForm
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub n: usize,
    pub k: u32,
    pub q: u32,
    pub error: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub points: usize,
    pub agree: usize,
    pub disagree: usize,
    pub no_closed_form: usize,
    pub distance_checked: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub rows: Vec<SweepRow>,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn all_ok(&self) -> bool {
        self.summary.disagree == 0 && self.summary.errors == 0
    }
}

/// Constructs and checks one grid point.
pub fn sweep_point(p: &PrmParams, distance_budget: u128) -> Result<SweepRow> {
    let c = construct(p)?;
    let code = &c.code;
    let dual = code.dual()?;
    let hull = code.hull()?;
    let dual_hull = dual.hull()?;
    let report = classify_with(p, code, &hull)?;
    let k_sorensen = dim_sorensen(p)?;
    let k_mr = dim_mr(p)?;
    let dual_verified = equal_codes(&dual, &described_dual(p)?)?;
    let q = p.q as u128;
    let words = (0..code.dimension()).try_fold(1u128, |acc, _| acc.checked_mul(q));
    let min_distance = match words {
        Some(w) if w <= distance_budget => min_distance_with(code, &EnumOptions::with_budget(w))?,
        _ => None,
    };
    let hull_dim_gram = code.dimension() - hull.gram_rank;
    let ok = report.agree
        && k_sorensen == k_mr
        && k_mr == code.dimension() as u64
        && dual_verified
        && hull_dim_gram == hull.hull_dim
        && dual_hull.hull_dim == hull.hull_dim
        && min_distance.is_none_or(|d| d as u64 == report.d_formula);
    Ok(SweepRow {
        hull_case: report.hull_case.map(|c| c.label()),
        report,
        dim_mr: k_mr,
        rank: code.dimension(),
        dual_verified,
        hull_dim_gram,
        hull_dim_intersection: hull.hull_dim,
        hull_dim_dual: dual_hull.hull_dim,
        min_distance,
        ok,
    })
}

/// Runs every grid point. Output order follows `spec.points()` whatever the
/// worker count.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    let points = spec.points()?;
    let one = |p: &PrmParams| sweep_point(p, spec.distance_budget);
    let results: Vec<Result<SweepRow>> = if spec.workers <= 1 {
        points.iter().map(one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.workers)
            .build()
            .map_err(|e| Error::InternalInconsistency(format!("worker pool: {e}")))?;
        pool.install(|| points.par_iter().map(one).collect())
    };
    let mut summary = SweepSummary {
        points: points.len(),
        ..Default::default()
    };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (p, r) in points.iter().zip(results) {
        match r {
            Ok(row) => {
                if row.ok {
                    summary.agree += 1;
                } else {
                    summary.disagree += 1;
                }
                summary.no_closed_form += row.no_closed_form() as usize;
                summary.distance_checked += row.min_distance.is_some() as usize;
                rows.push(row);
            }
            Err(e) => {
                summary.errors += 1;
                failures.push(SweepFailure {
                    n: p.n,
                    k: p.k,
                    q: p.q,
                    error: e.to_string(),
                });
            }
        }
    }
    Ok(SweepReport {
        summary,
        rows,
        failures,
    })
}

pub const CSV_HEADER: &str = "n,k,q,N,K,K_mr,rank,D_formula,D_exhaustive,\
pred_self_dual,pred_self_orthogonal,pred_lcd,pred_hull_dim,\
self_dual,self_orthogonal,lcd,hull_dim,hull_dim_gram,hull_dim_dual,\
dual_verified,hull_dim_source,hull_case,ok";

pub fn csv_line(r: &SweepRow) -> String {
    let rep = &r.report;
    let (pr, me) = (&rep.predicted, &rep.constructed);
    let pred_hull = match pr.hull_dim {
        HullPrediction::ClosedForm { dim, .. } => dim.to_string(),
        HullPrediction::NoClosedForm => "no-closed-form".into(),
    };
    let source = match rep.hull_dim_source {
        crate::prm::HullDimSource::ClosedForm => "closed-form",
        crate::prm::HullDimSource::Constructive => "constructive",
    };
    [
        rep.n.to_string(),
        rep.k.to_string(),
        rep.q.to_string(),
        rep.length.to_string(),
        rep.dimension.to_string(),
        r.dim_mr.to_string(),
        r.rank.to_string(),
        rep.d_formula.to_string(),
        r.min_distance.map(|d| d.to_string()).unwrap_or_default(),
        pr.self_dual.to_string(),
        pr.self_orthogonal.to_string(),
        pr.lcd.to_string(),
        pred_hull,
        me.self_dual.to_string(),
        me.self_orthogonal.to_string(),
        me.lcd.to_string(),
        me.hull_dim.to_string(),
        r.hull_dim_gram.to_string(),
        r.hull_dim_dual.to_string(),
        r.dual_verified.to_string(),
        source.to_string(),
        r.hull_case.unwrap_or("").to_string(),
        r.ok.to_string(),
    ]
    .join(",")
}
