//! Projective and affine Reed-Muller codes, their closed-form parameters,
//! and the structural predictions (dual, self-duality, self-orthogonality,
//! LCD, hull dimension and hull basis) that constructed codes are checked
//! against.
//!
//! Notation: `C(n,k,q)` is the projective code of degree-k forms on
//! `P^n(F_q)`; `top = n(q-1)`; `ell = top - k` is the dual degree.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::code::{equal_codes, HullReport, LinearCode};
use crate::error::{Error, Result};
use crate::field::{prime_power, Elem, Field};
use crate::geometry::{
    affine_points, affine_reduced_monomials, monomials_of_degree, projective_length,
    projective_points, reduced_basis_monomials, Evaluator, Monomial, ProjectivePointSet,
};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrmParams {
    pub n: usize,
    pub k: u32,
    pub q: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// k = 0: the span of the all-ones vector.
    #[serde(rename = "span-1")]
    SpanOfOnes,
    /// 1 ≤ k ≤ n(q-1).
    Proper,
    /// k > n(q-1): all of F_q^N.
    #[serde(rename = "trivial")]
    FullSpace,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::SpanOfOnes => "span-1",
            Regime::Proper => "proper",
            Regime::FullSpace => "trivial",
        })
    }
}

impl PrmParams {
    pub fn new(n: usize, k: u32, q: u32) -> Result<PrmParams> {
        if n < 1 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        if prime_power(q as u64).is_none() || q as u64 > crate::field::MAX_Q {
            return Err(Error::NotPrimePower(q as u64));
        }
        Ok(PrmParams { n, k, q })
    }

    /// `n(q-1)`, the largest degree giving a proper code.
    pub fn top(&self) -> u32 {
        self.n as u32 * (self.q - 1)
    }

    pub fn regime(&self) -> Regime {
        if self.k == 0 {
            Regime::SpanOfOnes
        } else if self.k <= self.top() {
            Regime::Proper
        } else {
            Regime::FullSpace
        }
    }

    pub fn length(&self) -> u64 {
        projective_length(self.q as u64, self.n)
    }

    /// Dual degree `n(q-1) - k` (only meaningful for proper codes).
    pub fn ell(&self) -> u32 {
        self.top() - self.k
    }

    pub fn with_k(&self, k: u32) -> PrmParams {
        PrmParams { k, ..*self }
    }

    fn require_proper(&self) -> Result<()> {
        if self.regime() != Regime::Proper {
            return Err(Error::OutOfRange(format!(
                "{self}: needs 1 ≤ k ≤ n(q-1) = {}",
                self.top()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PrmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PRM(n={},k={},q={})", self.n, self.k, self.q)
    }
}

/// A constructed projective code together with the monomial behind each
/// generator row (empty for the span of ones).
#[derive(Clone, Debug)]
pub struct PrmConstruction {
    pub params: PrmParams,
    pub code: LinearCode,
    pub monomials: Vec<Monomial>,
    pub points: ProjectivePointSet,
}

/// Basis monomials used for the generator rows.
pub fn generator_monomials(p: &PrmParams) -> Result<Vec<Monomial>> {
    match p.regime() {
        Regime::SpanOfOnes => Ok(vec![Monomial::new(vec![0; p.n + 1])]),
        _ => reduced_basis_monomials(p.n, p.k, p.q),
    }
}

pub fn construct(p: &PrmParams) -> Result<PrmConstruction> {
    let field = Field::new(p.q as u64)?;
    let points = projective_points(&field, p.n)?;
    let monomials = generator_monomials(p)?;
    let mut ev = Evaluator::new(&field);
    let mut data = Vec::with_capacity(monomials.len() * points.len());
    for m in &monomials {
        data.extend(ev.eval_points(m, points.iter()));
    }
    let g = Matrix::new(&field, monomials.len(), points.len(), data)?;
    let expected = match p.regime() {
        Regime::SpanOfOnes => 1,
        Regime::Proper => dim_sorensen(p)? as usize,
        Regime::FullSpace => points.len(),
    };
    let rank = g.rank();
    if rank != expected || rank != g.rows() {
        return Err(Error::InternalInconsistency(format!(
            "{p}: {} generator rows of rank {rank}, expected dimension {expected}",
            g.rows()
        )));
    }
    let code = LinearCode::new_unchecked(g, p.to_string());
    Ok(PrmConstruction {
        params: *p,
        code,
        monomials,
        points,
    })
}

pub fn prm_code(p: &PrmParams) -> Result<LinearCode> {
    Ok(construct(p)?.code)
}

/// Affine Reed-Muller code: reduced polynomials of degree ≤ k evaluated on
/// all of F_q^n.
pub fn arm_code(n: usize, k: u32, q: u32) -> Result<LinearCode> {
    if n < 1 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let field = Field::new(q as u64)?;
    let points = affine_points(&field, n);
    let monomials = affine_reduced_monomials(n, k, q);
    let mut ev = Evaluator::new(&field);
    let rows: Vec<Vec<Elem>> = monomials
        .iter()
        .map(|m| ev.eval_points(m, points.iter().map(|p| p.as_slice())))
        .collect();
    let g = Matrix::from_rows(&field, points.len(), &rows)?;
    LinearCode::new(g, format!("ARM(n={n},k={k},q={q})"))
}

/// `C(a, b)` with `C(a, b) = 0` for `b < 0` or `a < b`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

fn to_u64(v: BigInt, what: &str) -> Result<u64> {
    if v.is_negative() {
        return Err(Error::InternalInconsistency(format!(
            "{what} evaluated to {v}"
        )));
    }
    v.to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("{what} = {v} does not fit in 64 bits")))
}

fn sign(j: i64) -> BigInt {
    if j % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Dimension as a sum over degrees `t ≡ k (mod q-1)` of inclusion-exclusion
/// counts of reduced monomials.
pub fn dim_sorensen(p: &PrmParams) -> Result<u64> {
    p.require_proper()?;
    let (n, q) = (p.n as i64, p.q as i64);
    let mut total = BigInt::zero();
    let mut t = p.k as i64;
    while t > 0 {
        for j in 0..=n + 1 {
            total += sign(j) * binomial(n + 1, j) * binomial(t - j * q + n, t - j * q);
        }
        t -= q - 1;
    }
    to_u64(total, "dimension")
}

/// Dimension as `C(n+k, k)` minus a correction sum.
pub fn dim_mr(p: &PrmParams) -> Result<u64> {
    p.require_proper()?;
    let (n, k, q) = (p.n as i64, p.k as i64, p.q as i64);
    let mut correction = BigInt::zero();
    for j in 2..=n + 1 {
        let mut inner = BigInt::zero();
        for i in 0..=j - 2 {
            let b = k + (i + 1) * (q - 1) - j * q;
            inner += binomial(b + n, b);
        }
        correction += sign(j) * binomial(n + 1, j) * inner;
    }
    to_u64(binomial(n + k, k) - correction, "alternative dimension")
}

/// `(q - s) q^{n-r-1}` where `k - 1 = r(q-1) + s`, `0 ≤ s < q-1`.
pub fn min_dist_formula(p: &PrmParams) -> Result<u64> {
    p.require_proper()?;
    let (q, k) = (p.q as u64, p.k as u64);
    let r = (k - 1) / (q - 1);
    let s = (k - 1) % (q - 1);
    let d = (q - s) * q.pow((p.n as u64 - r - 1) as u32);
    if k < q {
        let low_degree = (q - k + 1) * q.pow(p.n as u32 - 1);
        if d != low_degree {
            return Err(Error::InternalInconsistency(format!(
                "{p}: distance {d} vs {low_degree} for k < q"
            )));
        }
    }
    Ok(d)
}

/// The dual is `C(n, ell, q)`, with the all-ones vector adjoined when
/// `k ≡ 0 (mod q-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualDescription {
    pub ell: u32,
    pub adjoin_ones: bool,
}

pub fn dual_description(p: &PrmParams) -> Result<DualDescription> {
    p.require_proper()?;
    Ok(DualDescription {
        ell: p.ell(),
        adjoin_ones: p.k.is_multiple_of(p.q - 1),
    })
}

/// The code the dual description names, built from scratch.
pub fn described_dual(p: &PrmParams) -> Result<LinearCode> {
    let d = dual_description(p)?;
    let base = prm_code(&p.with_k(d.ell))?;
    if d.adjoin_ones {
        let ones = vec![1; base.length()];
        base.adjoin(&ones, format!("span(1, {})", base.label()))
    } else {
        Ok(base)
    }
}

/// Checks `dual(C(n,k,q))` against the described dual by row-space equality.
pub fn verify_dual_description(p: &PrmParams) -> Result<bool> {
    let dual = prm_code(p)?.dual()?;
    equal_codes(&dual, &described_dual(p)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub self_dual: bool,
    pub self_orthogonal: bool,
    pub lcd: bool,
}

pub fn classify_predicted(p: &PrmParams) -> Result<Classification> {
    p.require_proper()?;
    let (n, k, q) = (p.n as u32, p.k, p.q);
    let top = p.top();
    Ok(Classification {
        self_dual: q % 2 == 1 && n % 2 == 1 && 2 * k == top,
        self_orthogonal: 2 * k <= top && (2 * k) % (q - 1) == 0,
        lcd: k == top,
    })
}

/// Which closed form determined a hull dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullCase {
    /// k < (q-1)/2: all degree-k monomials but `x_n^k`.
    SmallDegree,
    /// Dual side of `SmallDegree`, including the LCD point k = n(q-1).
    SmallDualDegree,
    /// (q-1)/2 < k < q-1.
    MidDegree,
    /// Dual side of `MidDegree`.
    MidDualDegree,
    /// k ≤ n(q-1)/2 and 2k ≡ 0: hull is the code.
    SelfOrthogonal,
    /// n(q-1)/2 ≤ k, 2k ≡ 0, k ≢ 0: hull is the dual.
    DualSelfOrthogonal,
}

impl HullCase {
    pub fn label(&self) -> &'static str {
        match self {
            HullCase::SmallDegree => "q>2k+1",
            HullCase::SmallDualDegree => "dual of q>2k+1",
            HullCase::MidDegree => "(q-1)/2<k<q-1",
            HullCase::MidDualDegree => "dual of (q-1)/2<k<q-1",
            HullCase::SelfOrthogonal => "self-orthogonal",
            HullCase::DualSelfOrthogonal => "dual self-orthogonal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullPrediction {
    ClosedForm { dim: u64, case: HullCase },
    NoClosedForm,
}

impl HullPrediction {
    pub fn dim(&self) -> Option<u64> {
        match self {
            HullPrediction::ClosedForm { dim, .. } => Some(*dim),
            HullPrediction::NoClosedForm => None,
        }
    }
}

impl Serialize for HullPrediction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            HullPrediction::ClosedForm { dim, .. } => s.serialize_u64(*dim),
            HullPrediction::NoClosedForm => s.serialize_str("no-closed-form"),
        }
    }
}

fn binom_u64(a: u64, b: u64) -> Result<u64> {
    to_u64(binomial(a as i64, b as i64), "binomial")
}

/// Every closed form whose hypotheses hold at `p`, in summary order.
pub fn hull_dim_cases(p: &PrmParams) -> Result<Vec<(HullCase, u64)>> {
    p.require_proper()?;
    let (n, k, q) = (p.n as u64, p.k as u64, p.q as u64);
    let m = q - 1;
    let top = n * m;
    let ell = top - k;
    let kk = dim_sorensen(p)?;
    let mut out = Vec::new();
    // fractions are compared after doubling
    if 2 * k < m {
        out.push((HullCase::SmallDegree, kk - 1));
    }
    if 2 * k > 2 * top - m {
        out.push((HullCase::SmallDualDegree, binom_u64(n + ell, ell)? - 1));
    }
    if m < 2 * k && k < m {
        out.push((HullCase::MidDegree, kk - (2 * k + 1 - m)));
    }
    if (n - 1) * m < k && 2 * k < 2 * top - m {
        out.push((
            HullCase::MidDualDegree,
            binom_u64(n + ell, ell)? - (2 * ell + 1 - m),
        ));
    }
    if 2 * k <= top && (2 * k) % m == 0 {
        out.push((HullCase::SelfOrthogonal, kk));
    }
    if 2 * k >= top && (2 * k) % m == 0 && k % m != 0 {
        out.push((
            HullCase::DualSelfOrthogonal,
            dim_sorensen(&p.with_k(ell as u32))?,
        ));
    }
    Ok(out)
}

/// Closed-form hull dimension, or `NoClosedForm` outside the proven ranges.
/// Overlapping cases must agree.
pub fn hull_dim_predicted(p: &PrmParams) -> Result<HullPrediction> {
    let cases = hull_dim_cases(p)?;
    let Some(&(case, dim)) = cases.first() else {
        return Ok(HullPrediction::NoClosedForm);
    };
    if let Some(&(other, d)) = cases.iter().find(|c| c.1 != dim) {
        return Err(Error::InternalInconsistency(format!(
            "{p}: case {} gives {dim} but case {} gives {d}",
            case.label(),
            other.label()
        )));
    }
    Ok(HullPrediction::ClosedForm { dim, case })
}

/// Monomials whose evaluations form a hull basis, where known.
pub fn hull_basis_predicted(p: &PrmParams) -> Result<Option<Vec<Monomial>>> {
    p.require_proper()?;
    let (n, k, q) = (p.n, p.k, p.q);
    let all = monomials_of_degree(n, k);
    if q > 2 * k + 1 {
        let last = Monomial::pure_power(n, n, k);
        return Ok(Some(all.into_iter().filter(|m| *m != last).collect()));
    }
    if q - 1 < 2 * k && k < q - 1 {
        let excluded: Vec<Monomial> = ((q - 1 - k)..=k)
            .map(|a| {
                let mut e = vec![0; n + 1];
                e[n - 1] = k - a;
                e[n] = a;
                Monomial::new(e)
            })
            .collect();
        return Ok(Some(
            all.into_iter().filter(|m| !excluded.contains(m)).collect(),
        ));
    }
    Ok(None)
}

/// `ev(x_0^k)`, which lies in the hull whenever k < n(q-1).
pub fn lcd_witness(p: &PrmParams) -> Result<Vec<Elem>> {
    if p.k < 1 || p.k >= p.top() {
        return Err(Error::OutOfRange(format!(
            "{p}: witness needs 1 ≤ k < n(q-1) = {}",
            p.top()
        )));
    }
    let field = Field::new(p.q as u64)?;
    let pts = projective_points(&field, p.n)?;
    crate::geometry::evaluate(&Monomial::pure_power(p.n, 0, p.k), &pts)
}

/// Hull dimension of `C(2, k, q)` for `1 ≤ k ≤ 2(q-1)` from the
/// plane-curve formula `C(k+1, 2) + min(k, q-k-1)`, extended past `q-1`
/// through `Hull(C) = Hull(C^⊥)`.
pub fn rsj_hull_dim(k: u32, q: u32) -> Result<u64> {
    let m = q - 1;
    if k < 1 || k > 2 * m {
        return Err(Error::OutOfRange(format!(
            "plane formula needs 1 ≤ k ≤ {}",
            2 * m
        )));
    }
    if k == 2 * m {
        return Ok(0);
    }
    if k > m {
        return rsj_hull_dim(2 * m - k, q);
    }
    if (2 * k).is_multiple_of(m) {
        return dim_sorensen(&PrmParams { n: 2, k, q });
    }
    let (k, q) = (k as u64, q as u64);
    Ok(binom_u64(k + 1, 2)? + k.min(q - k - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedProperties {
    pub self_dual: bool,
    pub self_orthogonal: bool,
    pub lcd: bool,
    pub hull_dim: HullPrediction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MeasuredProperties {
    pub self_dual: bool,
    pub self_orthogonal: bool,
    pub lcd: bool,
    pub hull_dim: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullDimSource {
    ClosedForm,
    Constructive,
}

/// Predicted against constructed properties for one parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub k: u32,
    pub q: u32,
    #[serde(rename = "N")]
    pub length: u64,
    #[serde(rename = "K")]
    pub dimension: u64,
    #[serde(rename = "D_formula")]
    pub d_formula: u64,
    pub predicted: PredictedProperties,
    pub constructed: MeasuredProperties,
    pub agree: bool,
    pub hull_dim_source: HullDimSource,
    #[serde(skip)]
    pub hull_case: Option<HullCase>,
}

impl ClassificationReport {
    pub fn params(&self) -> PrmParams {
        PrmParams {
            n: self.n,
            k: self.k,
            q: self.q,
        }
    }
}

/// Measured predicates from a hull computation.
pub fn measure(code: &LinearCode, hull: &HullReport) -> MeasuredProperties {
    let k = code.dimension();
    let so = hull.gram_rank == 0;
    MeasuredProperties {
        self_dual: so && 2 * k == code.length(),
        self_orthogonal: so,
        lcd: hull.gram_rank == k,
        hull_dim: hull.hull_dim as u64,
    }
}

pub fn classify(p: &PrmParams) -> Result<ClassificationReport> {
    let code = prm_code(p)?;
    let hull = code.hull()?;
    classify_with(p, &code, &hull)
}

pub fn classify_with(
    p: &PrmParams,
    code: &LinearCode,
    hull: &HullReport,
) -> Result<ClassificationReport> {
    let pred = classify_predicted(p)?;
    let hull_pred = hull_dim_predicted(p)?;
    let constructed = measure(code, hull);
    let predicted = PredictedProperties {
        self_dual: pred.self_dual,
        self_orthogonal: pred.self_orthogonal,
        lcd: pred.lcd,
        hull_dim: hull_pred,
    };
    let agree = predicted.self_dual == constructed.self_dual
        && predicted.self_orthogonal == constructed.self_orthogonal
        && predicted.lcd == constructed.lcd
        && hull_pred.dim().is_none_or(|d| d == constructed.hull_dim);
    let (source, case) = match hull_pred {
        HullPrediction::ClosedForm { case, .. } => (HullDimSource::ClosedForm, Some(case)),
        HullPrediction::NoClosedForm => (HullDimSource::Constructive, None),
    };
    Ok(ClassificationReport {
        n: p.n,
        k: p.k,
        q: p.q,
        length: code.length() as u64,
        dimension: code.dimension() as u64,
        d_formula: min_dist_formula(p)?,
        predicted,
        constructed,
        agree,
        hull_dim_source: source,
        hull_case: case,
    })
}

/// Outcome of checking a predicted hull basis against a constructed hull.
#[derive(Clone, Debug, Serialize)]
pub struct BasisCheck {
    pub monomial: Monomial,
    pub in_hull: bool,
}

/// Evaluates each predicted basis monomial and tests hull membership.
/// Returns `None` where no basis is predicted.
pub fn check_hull_basis(
    c: &PrmConstruction,
    hull: &HullReport,
) -> Result<Option<(Vec<BasisCheck>, bool)>> {
    let Some(basis) = hull_basis_predicted(&c.params)? else {
        return Ok(None);
    };
    let mut ev = Evaluator::new(c.code.field());
    let mut rows = Vec::with_capacity(basis.len());
    let mut checks = Vec::with_capacity(basis.len());
    for m in basis {
        let v = ev.eval_points(&m, c.points.iter());
        let in_hull = hull.hull_basis.contains(&v)?;
        checks.push(BasisCheck {
            monomial: m,
            in_hull,
        });
        rows.push(v);
    }
    let independent =
        Matrix::from_rows(c.code.field(), c.code.length(), &rows)?.rank() == rows.len();
    let spans = independent && rows.len() == hull.hull_dim && checks.iter().all(|b| b.in_hull);
    Ok(Some((checks, spans)))
}
