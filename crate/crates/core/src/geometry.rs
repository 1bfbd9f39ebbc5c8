//! Evaluation geometry: standard representatives of projective points,
//! homogeneous monomials, reduction modulo `x^q - x`, and the evaluation map.
//!
//! Orderings are fixed so that generator matrices are reproducible:
//! points are grouped by the position of their leading 1 and listed
//! lexicographically inside each group (last coordinate fastest); monomials
//! of a given degree are lexicographic with `x_0` heaviest, so `x_n^k` is last.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Exponent vector `(a_0, …, a_n)` of a monomial in `n + 1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        let degree = exponents.iter().sum();
        Monomial { exponents, degree }
    }

    /// `x_i^d` in `n + 1` variables.
    pub fn pure_power(n: usize, i: usize, d: u32) -> Monomial {
        let mut e = vec![0; n + 1];
        e[i] = d;
        Monomial::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    /// Every exponent at most `q - 1`.
    pub fn is_reduced(&self, q: u32) -> bool {
        self.exponents.iter().all(|&a| a < q)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Monomial> {
        let exps = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("monomial `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::new(exps))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Standard representatives of all points of `P^n(F_q)`.
#[derive(Clone, Debug)]
pub struct ProjectivePointSet {
    field: Field,
    n: usize,
    /// Row-major, `n + 1` coordinates per point.
    coords: Vec<Elem>,
}

impl ProjectivePointSet {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coords.len() / (self.n + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[Elem] {
        &self.coords[i * (self.n + 1)..(i + 1) * (self.n + 1)]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Elem]> {
        self.coords.chunks_exact(self.n + 1)
    }
}

/// `(q^{n+1} - 1) / (q - 1)`.
pub fn projective_length(q: u64, n: usize) -> u64 {
    (0..=n as u32).map(|i| q.pow(i)).sum()
}

pub fn projective_points(field: &Field, n: usize) -> Result<ProjectivePointSet> {
    if n < 1 {
        return Err(Error::OutOfRange(
            "projective dimension must be at least 1".into(),
        ));
    }
    let q = field.q() as usize;
    let dim = n + 1;
    let mut coords = Vec::with_capacity(projective_length(q as u64, n) as usize * dim);
    for lead in 0..dim {
        let free = dim - lead - 1;
        let count = q.pow(free as u32);
        for t in 0..count {
            let start = coords.len();
            coords.resize(start + dim, 0);
            coords[start + lead] = 1;
            let mut t = t;
            for j in (lead + 1..dim).rev() {
                coords[start + j] = (t % q) as Elem;
                t /= q;
            }
        }
    }
    Ok(ProjectivePointSet {
        field: field.clone(),
        n,
        coords,
    })
}

/// All `C(n+k, k)` monomials of degree k in `x_0..x_n`, `x_0^k` first and
/// `x_n^k` last.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n + 1];
    fill_desc(&mut cur, 0, k, None, &mut out);
    out
}

/// Reduced monomials (exponents ≤ cap) of degree exactly `k`, same order.
fn reduced_of_degree(n: usize, k: u32, cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n + 1];
    fill_desc(&mut cur, 0, k, Some(cap), &mut out);
    out
}

fn fill_desc(
    cur: &mut [u32],
    pos: usize,
    remaining: u32,
    cap: Option<u32>,
    out: &mut Vec<Monomial>,
) {
    if pos == cur.len() - 1 {
        if cap.is_none_or(|c| remaining <= c) {
            cur[pos] = remaining;
            out.push(Monomial::new(cur.to_vec()));
        }
        return;
    }
    let hi = cap.map_or(remaining, |c| remaining.min(c));
    for a in (0..=hi).rev() {
        cur[pos] = a;
        fill_desc(cur, pos + 1, remaining - a, cap, out);
    }
    cur[pos] = 0;
}

/// Reduction modulo `x_j^q - x_j`: a positive exponent `a(q-1) + b` with
/// `0 < b ≤ q-1` becomes `b`; zero exponents stay zero.
pub fn reduce_monomial(m: &Monomial, q: u32) -> Monomial {
    let exps = m
        .exponents
        .iter()
        .map(|&t| if t == 0 { 0 } else { (t - 1) % (q - 1) + 1 })
        .collect();
    Monomial::new(exps)
}

/// Reduced monomials of every degree `t ≡ k (mod q-1)` with `0 < t ≤ k`,
/// degree descending, then lexicographic. For `1 ≤ k ≤ n(q-1)` the
/// evaluations of these form a basis of the degree-k projective code.
pub fn reduced_basis_monomials(n: usize, k: u32, q: u32) -> Result<Vec<Monomial>> {
    if k < 1 {
        return Err(Error::OutOfRange("reduced basis needs k ≥ 1".into()));
    }
    let step = q - 1;
    let mut out = Vec::new();
    let mut t = k;
    loop {
        out.extend(reduced_of_degree(n, t, q - 1));
        if t <= step {
            break;
        }
        t -= step;
    }
    Ok(out)
}

/// Reduced monomials in `n` affine variables with total degree ≤ k,
/// ascending degree, lexicographic within a degree.
pub fn affine_reduced_monomials(n: usize, k: u32, q: u32) -> Vec<Monomial> {
    let max = k.min(n as u32 * (q - 1));
    (0..=max)
        .flat_map(|d| {
            if n == 0 {
                vec![Monomial::new(vec![])]
            } else {
                reduced_of_degree(n - 1, d, q - 1)
            }
        })
        .collect()
}

/// All points of F_q^n, lexicographic with the last coordinate fastest.
pub fn affine_points(field: &Field, n: usize) -> Vec<Vec<Elem>> {
    let q = field.q() as usize;
    (0..q.pow(n as u32))
        .map(|t| {
            let mut p = vec![0; n];
            let mut t = t;
            for j in (0..n).rev() {
                p[j] = (t % q) as Elem;
                t /= q;
            }
            p
        })
        .collect()
}

/// Caches `x^a` over the whole field for each exponent it has seen.
pub struct Evaluator {
    field: Field,
    powers: HashMap<u32, Vec<Elem>>,
}

impl Evaluator {
    pub fn new(field: &Field) -> Evaluator {
        Evaluator {
            field: field.clone(),
            powers: HashMap::new(),
        }
    }

    fn table(&mut self, a: u32) -> &[Elem] {
        let f = &self.field;
        self.powers
            .entry(a)
            .or_insert_with(|| f.elements().map(|x| f.pow(x, a as u64)).collect())
    }

    /// `Π_j point[j]^{a_j}` with `0^0 = 1`.
    pub fn eval_at(&mut self, m: &Monomial, point: &[Elem]) -> Elem {
        let mut acc = 1;
        for (&a, &x) in m.exponents.iter().zip(point) {
            if a == 0 {
                continue;
            }
            let v = self.table(a)[x as usize];
            acc = self.field.mul(acc, v);
            if acc == 0 {
                break;
            }
        }
        acc
    }

    pub fn eval_points<'a>(
        &mut self,
        m: &Monomial,
        points: impl Iterator<Item = &'a [Elem]>,
    ) -> Vec<Elem> {
        points.map(|p| self.eval_at(m, p)).collect()
    }
}

/// The evaluation vector `(m(P_1), …, m(P_N))` over the standard representatives.
pub fn evaluate(m: &Monomial, pts: &ProjectivePointSet) -> Result<Vec<Elem>> {
    if m.num_vars() != pts.n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "monomial in {} variables evaluated on P^{}",
            m.num_vars(),
            pts.n
        )));
    }
    Ok(Evaluator::new(&pts.field).eval_points(m, pts.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn point_order_for_q2_n1() {
        let f = Field::new(2).unwrap();
        let pts = projective_points(&f, 1).unwrap();
        let v: Vec<Vec<Elem>> = pts.iter().map(|p| p.to_vec()).collect();
        assert_eq!(v, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn point_counts() {
        assert_eq!(
            projective_points(&Field::new(3).unwrap(), 1).unwrap().len(),
            4
        );
        assert_eq!(
            projective_points(&Field::new(3).unwrap(), 2).unwrap().len(),
            13
        );
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = Field::new(q).unwrap();
            for n in 1..=3 {
                let pts = projective_points(&f, n).unwrap();
                assert_eq!(pts.len() as u64, (q.pow(n as u32 + 1) - 1) / (q - 1));
                assert_eq!(pts.len() as u64, projective_length(q, n));
            }
        }
        assert!(projective_points(&Field::new(2).unwrap(), 0).is_err());
    }

    #[test]
    fn points_are_normalized_and_pairwise_non_proportional() {
        for q in [3u64, 4, 5] {
            let f = Field::new(q).unwrap();
            let pts = projective_points(&f, 2).unwrap();
            let mut seen = std::collections::HashSet::new();
            for p in pts.iter() {
                let lead = p.iter().position(|&x| x != 0).unwrap();
                assert_eq!(p[lead], 1);
                // canonicalize each scalar multiple; every class must appear once
                for c in 1..q as Elem {
                    let scaled: Vec<Elem> = p.iter().map(|&x| f.mul(x, c)).collect();
                    let lead = scaled[scaled.iter().position(|&x| x != 0).unwrap()];
                    let inv = f.inv(lead).unwrap();
                    let norm: Vec<Elem> = scaled.iter().map(|&x| f.mul(x, inv)).collect();
                    assert_eq!(norm, p.to_vec());
                }
                assert!(seen.insert(p.to_vec()));
            }
        }
    }

    #[test]
    fn monomial_order() {
        let m = monomials_of_degree(1, 2);
        let e: Vec<Vec<u32>> = m.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(e, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(2, 1).len(), 3);
        assert_eq!(monomials_of_degree(3, 3).len(), 20);
        let m = monomials_of_degree(3, 4);
        assert_eq!(m.first().unwrap(), &Monomial::pure_power(3, 0, 4));
        assert_eq!(m.last().unwrap(), &Monomial::pure_power(3, 3, 4));
        assert!(m.windows(2).all(|w| w[0] > w[1]));
        for n in 1..4 {
            for k in 0..7 {
                assert_eq!(
                    monomials_of_degree(n, k).len() as u64,
                    binom(n as u64 + k as u64, k as u64)
                );
            }
        }
    }

    #[test]
    fn reduction() {
        assert_eq!(
            reduce_monomial(&Monomial::new(vec![5]), 4),
            Monomial::new(vec![2])
        );
        let m = Monomial::new(vec![1, 0, 2]);
        assert_eq!(reduce_monomial(&m, 3), m);
        assert_eq!(
            reduce_monomial(&Monomial::new(vec![6, 0]), 7),
            Monomial::new(vec![6, 0])
        );
        assert_eq!(
            reduce_monomial(&Monomial::new(vec![12, 0]), 7),
            Monomial::new(vec![6, 0])
        );
        assert_eq!(
            reduce_monomial(&Monomial::new(vec![7, 0]), 7),
            Monomial::new(vec![1, 0])
        );
    }

    #[test]
    fn reduced_basis_examples() {
        assert_eq!(reduced_basis_monomials(2, 2, 3).unwrap().len(), 6);
        let b = reduced_basis_monomials(1, 1, 3).unwrap();
        assert_eq!(
            b,
            vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])]
        );
        for q in [3u32, 4, 5, 7] {
            for k in 1..q {
                assert_eq!(
                    reduced_basis_monomials(2, k, q).unwrap(),
                    monomials_of_degree(2, k)
                );
            }
        }
        assert!(reduced_basis_monomials(2, 0, 3).is_err());
    }

    #[test]
    fn reduced_basis_strictly_increases_and_fills_space() {
        for q in [2u32, 3, 4, 5, 7] {
            for n in 1..=3usize {
                let top = n as u32 * (q - 1);
                let sizes: Vec<usize> = (1..=top + 2)
                    .map(|k| reduced_basis_monomials(n, k, q).unwrap().len())
                    .collect();
                for k in 1..top {
                    let (a, b) = (sizes[k as usize - 1], sizes[k as usize]);
                    assert!(b > a, "q={q} n={n} k={k}");
                }
                for a in 1..top {
                    for b in a + 1..=top {
                        assert!(sizes[b as usize - 1] - sizes[a as usize - 1] >= (b - a) as usize);
                    }
                }
                let big_n = projective_length(q as u64, n) as usize;
                assert_eq!(sizes[top as usize], big_n);
                assert_eq!(sizes[top as usize + 1], big_n);
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let f = Field::new(5).unwrap();
        let pts = projective_points(&f, 2).unwrap();
        let v = evaluate(&Monomial::pure_power(2, 0, 3), &pts).unwrap();
        for (p, x) in pts.iter().zip(&v) {
            assert_eq!(*x, if p[0] == 1 { 1 } else { 0 });
        }
        let ones = evaluate(&Monomial::new(vec![0, 0, 0]), &pts).unwrap();
        assert!(ones.iter().all(|&x| x == 1));
        assert!(evaluate(&Monomial::new(vec![1, 1]), &pts).is_err());
    }

    #[test]
    fn evaluation_invariant_under_reduction() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = Field::new(q).unwrap();
            let pts = projective_points(&f, 2).unwrap();
            let mut ev = Evaluator::new(&f);
            for _ in 0..200 {
                let m = Monomial::new((0..3).map(|_| rng.gen_range(0..40)).collect());
                let r = reduce_monomial(&m, q as u32);
                assert!(r.is_reduced(q as u32));
                assert_eq!(
                    ev.eval_points(&m, pts.iter()),
                    ev.eval_points(&r, pts.iter())
                );
            }
        }
    }

    #[test]
    fn monomial_text_form() {
        let m: Monomial = "2,0,1".parse().unwrap();
        assert_eq!(m.degree(), 3);
        assert_eq!(m.to_string(), "2,0,1");
        assert_eq!(serde_json::to_string(&m).unwrap(), "\"2,0,1\"");
        assert!("2,x".parse::<Monomial>().is_err());
    }

    #[test]
    fn affine_monomials_and_points() {
        assert_eq!(affine_points(&Field::new(3).unwrap(), 2).len(), 9);
        // q=3, n=1, k=1: {1, x}
        assert_eq!(affine_reduced_monomials(1, 1, 3).len(), 2);
        // all reduced monomials in 2 variables: q^2
        assert_eq!(affine_reduced_monomials(2, 2 * 2, 3).len(), 9);
    }
}
