//! Exhaustive codeword enumeration: weight distributions, minimum distance,
//! supports of fixed-weight codewords, and t-design checks.
//!
//! Messages are walked in reflected mixed-radix Gray order, so consecutive
//! codewords differ by a field multiple of a single generator row and each
//! step costs O(N). Over F_3 with N ≤ 128 the codeword lives in two bitplanes
//! and a step is a handful of word operations plus a popcount.
//!
//! The message space is split into independent tasks by fixing the last few
//! message symbols. Tasks run on a worker pool and their tallies are merged by
//! addition, so results do not depend on the worker count.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::PrimInt;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub const DEFAULT_BUDGET: u128 = 1 << 33;

/// Sub-enumerations smaller than this are not split further.
pub const MIN_TASK_STEPS: u128 = 1_000_000;

/// Codeword counts `A_0..A_N` by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn zero(length: usize) -> WeightDistribution {
        WeightDistribution {
            counts: vec![0; length + 1],
        }
    }

    pub fn from_counts(counts: Vec<u64>) -> WeightDistribution {
        WeightDistribution { counts }
    }

    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Smallest nonzero weight, or `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts
            .iter()
            .skip(1)
            .position(|&c| c != 0)
            .map(|i| i + 1)
    }

    /// Nonzero `(weight, count)` pairs, ascending weight.
    pub fn pairs(&self) -> Vec<(usize, u64)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| (w, c))
            .collect()
    }

    /// `Σ A_w x^{N-w} y^w`, ascending powers of y, e.g. `x^4 + 8xy^3`.
    pub fn polynomial(&self) -> String {
        let n = self.length();
        let mut out = String::new();
        for (w, c) in self.pairs() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let mut term = String::new();
            if c != 1 {
                let _ = write!(term, "{c}");
            }
            term.push_str(&power("x", n - w));
            term.push_str(&power("y", w));
            if term.is_empty() {
                term.push('1');
            }
            out.push_str(&term);
        }
        out
    }

    fn merge(&mut self, other: &WeightDistribution) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }
}

fn power(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = self.pairs();
        let mut seq = s.serialize_seq(Some(pairs.len()))?;
        for p in pairs {
            seq.serialize_element(&[p.0 as u64, p.1])?;
        }
        seq.end()
    }
}

/// Distinct supports on the ground set `0..ground_size`, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockFamily {
    pub ground_size: usize,
    pub blocks: Vec<Vec<u32>>,
}

impl BlockFamily {
    pub fn new(ground_size: usize, blocks: impl IntoIterator<Item = Vec<u32>>) -> BlockFamily {
        let set: BTreeSet<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        BlockFamily {
            ground_size,
            blocks: set.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum DesignCheck {
    Design {
        t: usize,
        v: usize,
        block_size: usize,
        lambda: u64,
    },
    NotADesign,
}

/// λ if every t-subset of the ground set lies in the same number of blocks.
pub fn design_lambda(family: &BlockFamily, t: usize) -> DesignCheck {
    let Some(first) = family.blocks.first() else {
        return DesignCheck::NotADesign;
    };
    let k = first.len();
    if t == 0 || k < t || family.blocks.iter().any(|b| b.len() != k) {
        return DesignCheck::NotADesign;
    }
    let mut hits: HashMap<Vec<u32>, u64> = HashMap::new();
    for b in &family.blocks {
        for_each_subset(b, t, &mut |s| *hits.entry(s.to_vec()).or_default() += 1);
    }
    let v = family.ground_size;
    let subsets = crate::prm::binomial(v as i64, t as i64);
    if num_bigint::BigInt::from(hits.len()) != subsets {
        return DesignCheck::NotADesign;
    }
    let lambda = *hits.values().next().expect("nonempty");
    if hits.values().all(|&c| c == lambda) {
        DesignCheck::Design {
            t,
            v,
            block_size: k,
            lambda,
        }
    } else {
        DesignCheck::NotADesign
    }
}

fn for_each_subset(set: &[u32], t: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(set: &[u32], t: usize, start: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == t {
            f(cur);
            return;
        }
        for i in start..=set.len() - (t - cur.len()) {
            cur.push(set[i]);
            rec(set, t, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(set, t, 0, &mut Vec::with_capacity(t), f);
}

/// Which inner loop to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnumPath {
    /// Packed ternary when q = 3 and N ≤ 128, generic otherwise.
    #[default]
    Auto,
    Generic,
    Packed,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub budget: u128,
    pub workers: usize,
    pub path: EnumPath,
    /// Smallest sub-enumeration handed to a worker.
    pub min_task_steps: u128,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
            path: EnumPath::Auto,
            min_task_steps: MIN_TASK_STEPS,
        }
    }
}

impl EnumOptions {
    pub fn with_budget(budget: u128) -> Self {
        EnumOptions {
            budget,
            ..Default::default()
        }
    }
}

/// Reflected mixed-radix Gray counter (loopless). Each call moves one digit
/// by ±1.
#[derive(Clone, Debug)]
pub struct GrayCounter {
    digits: Vec<u32>,
    focus: Vec<usize>,
    up: Vec<bool>,
    radix: u32,
}

impl GrayCounter {
    pub fn new(len: usize, radix: u32) -> GrayCounter {
        GrayCounter {
            digits: vec![0; len],
            focus: (0..=len).collect(),
            up: vec![true; len],
            radix,
        }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Advances; returns `(position, old digit, new digit)` or `None` when done.
    #[inline]
    pub fn advance(&mut self) -> Option<(usize, u32, u32)> {
        let len = self.digits.len();
        let j = self.focus[0];
        self.focus[0] = 0;
        if j == len {
            return None;
        }
        let old = self.digits[j];
        let new = if self.up[j] { old + 1 } else { old - 1 };
        self.digits[j] = new;
        if new == 0 || new == self.radix - 1 {
            self.up[j] = !self.up[j];
            self.focus[j] = self.focus[j + 1];
            self.focus[j + 1] = j + 1;
        }
        Some((j, old, new))
    }
}

/// One independent slice of the message space: fixed symbols on some rows,
/// Gray walk over the rest.
#[derive(Clone, Debug)]
struct Task {
    fixed: Vec<(usize, Elem)>,
    free: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Tally {
    dist: WeightDistribution,
    collect: Option<usize>,
    blocks: BTreeSet<Vec<u32>>,
}

impl Tally {
    fn new(length: usize, collect: Option<usize>) -> Tally {
        Tally {
            dist: WeightDistribution::zero(length),
            collect,
            blocks: BTreeSet::new(),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.dist.merge(&other.dist);
        self.blocks.extend(other.blocks);
        self
    }
}

fn digits_of(mut t: u128, q: u128, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| {
            let d = (t % q) as Elem;
            t /= q;
            d
        })
        .collect()
}

fn pow_sat(q: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(q))
}

/// How many trailing rows to fix so each task still has enough work.
fn split_depth(q: u128, free: usize, opts: &EnumOptions) -> usize {
    let workers = opts.workers;
    if workers <= 1 {
        return 0;
    }
    let target = 8 * workers as u128;
    let mut d = 0;
    while d < free && pow_sat(q, d) < target && pow_sat(q, free - d - 1) >= opts.min_task_steps {
        d += 1;
    }
    d
}

/// Tasks covering every message once.
fn full_tasks(k: usize, q: u128, opts: &EnumOptions) -> Vec<Task> {
    let d = split_depth(q, k, opts);
    let free: Vec<usize> = (0..k - d).collect();
    (0..pow_sat(q, d))
        .map(|t| {
            let fixed = digits_of(t, q, d)
                .into_iter()
                .enumerate()
                .map(|(i, c)| (k - d + i, c))
                .collect();
            Task {
                fixed,
                free: free.clone(),
            }
        })
        .collect()
}

/// Tasks covering one message per nonzero scalar class: the first nonzero
/// symbol is 1.
fn projective_tasks(k: usize, q: u128, opts: &EnumOptions) -> Vec<Task> {
    let mut tasks = Vec::new();
    for lead in 0..k {
        let rest = k - lead - 1;
        let d = split_depth(q, rest, opts);
        let free: Vec<usize> = (lead + 1..k - d).collect();
        for t in 0..pow_sat(q, d) {
            let mut fixed = vec![(lead, 1)];
            fixed.extend(
                digits_of(t, q, d)
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| (k - d + i, c)),
            );
            tasks.push(Task {
                fixed,
                free: free.clone(),
            });
        }
    }
    tasks
}

trait Walker: Sync {
    fn run(&self, task: &Task, tally: &mut Tally);
}

struct GenericWalker<'a> {
    field: &'a Field,
    n: usize,
    q: usize,
    /// `c · row_r` at offset `(r * q + c) * n`.
    multiples: Vec<Elem>,
}

impl<'a> GenericWalker<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let field = code.field();
        let (n, q) = (code.length(), field.q() as usize);
        let g = code.generator();
        let mut multiples = vec![0; g.rows() * q * n];
        for r in 0..g.rows() {
            for c in 0..q {
                let dst = &mut multiples[(r * q + c) * n..(r * q + c + 1) * n];
                field.axpy(dst, c as Elem, g.row(r));
            }
        }
        GenericWalker {
            field,
            n,
            q,
            multiples,
        }
    }

    fn multiple(&self, row: usize, c: Elem) -> &[Elem] {
        let off = (row * self.q + c as usize) * self.n;
        &self.multiples[off..off + self.n]
    }
}

fn record(tally: &mut Tally, weight: usize, support: impl FnOnce() -> Vec<u32>) {
    tally.dist.counts[weight] += 1;
    if tally.collect == Some(weight) {
        tally.blocks.insert(support());
    }
}

impl Walker for GenericWalker<'_> {
    fn run(&self, task: &Task, tally: &mut Tally) {
        let f = self.field;
        let mut cw = vec![0 as Elem; self.n];
        for &(r, c) in &task.fixed {
            let m = self.multiple(r, c);
            for (x, &y) in cw.iter_mut().zip(m) {
                *x = f.add(*x, y);
            }
        }
        let support = |cw: &[Elem]| {
            cw.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, _)| i as u32)
                .collect()
        };
        let mut weight = cw.iter().filter(|&&x| x != 0).count();
        record(tally, weight, || support(&cw));
        let mut gray = GrayCounter::new(task.free.len(), self.q as u32);
        while let Some((j, old, new)) = gray.advance() {
            let delta = f.sub(new as Elem, old as Elem);
            let m = self.multiple(task.free[j], delta);
            for (x, &y) in cw.iter_mut().zip(m) {
                let before = *x;
                let after = f.add(before, y);
                *x = after;
                weight = weight + (after != 0) as usize - (before != 0) as usize;
            }
            record(tally, weight, || support(&cw));
        }
    }
}

/// Ternary digits in two bitplanes: bit i of `lo` marks symbol 1 at
/// position i, bit i of `hi` marks symbol 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trits<W> {
    pub lo: W,
    pub hi: W,
}

impl<W: PrimInt> Trits<W> {
    pub fn pack(v: &[Elem]) -> Trits<W> {
        let mut t = Trits {
            lo: W::zero(),
            hi: W::zero(),
        };
        for (i, &x) in v.iter().enumerate() {
            let bit = W::one() << i;
            match x {
                1 => t.lo = t.lo | bit,
                2 => t.hi = t.hi | bit,
                _ => {}
            }
        }
        t
    }

    pub fn unpack(&self, len: usize) -> Vec<Elem> {
        (0..len)
            .map(|i| {
                let bit = W::one() << i;
                if self.lo & bit != W::zero() {
                    1
                } else if self.hi & bit != W::zero() {
                    2
                } else {
                    0
                }
            })
            .collect()
    }

    #[inline(always)]
    pub fn support(self) -> W {
        self.lo | self.hi
    }

    #[inline(always)]
    pub fn weight(self) -> usize {
        self.support().count_ones() as usize
    }
}

/// Positionwise sum mod 3.
impl<W: PrimInt> std::ops::Add for Trits<W> {
    type Output = Trits<W>;

    #[inline(always)]
    fn add(self, b: Trits<W>) -> Trits<W> {
        let t = (self.lo | b.hi) ^ (self.hi | b.lo);
        Trits {
            lo: (self.hi | b.hi) ^ t,
            hi: (self.lo | b.lo) ^ t,
        }
    }
}

impl<W: PrimInt> std::ops::Neg for Trits<W> {
    type Output = Trits<W>;

    #[inline(always)]
    fn neg(self) -> Trits<W> {
        Trits {
            lo: self.hi,
            hi: self.lo,
        }
    }
}

struct PackedWalker<W> {
    rows: Vec<Trits<W>>,
}

impl<W: PrimInt + Send + Sync> PackedWalker<W> {
    fn new(code: &LinearCode) -> Self {
        PackedWalker {
            rows: code.generator().row_vectors().map(Trits::pack).collect(),
        }
    }
}

fn mask_positions<W: PrimInt>(mut m: W) -> Vec<u32> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != W::zero() {
        let i = m.trailing_zeros();
        out.push(i);
        m = m & (m - W::one());
    }
    out
}

impl<W: PrimInt + Send + Sync> Walker for PackedWalker<W> {
    fn run(&self, task: &Task, tally: &mut Tally) {
        let mut cw = Trits {
            lo: W::zero(),
            hi: W::zero(),
        };
        for &(r, c) in &task.fixed {
            match c {
                1 => cw = cw + self.rows[r],
                2 => cw = cw + -self.rows[r],
                _ => {}
            }
        }
        let plus: Vec<Trits<W>> = task.free.iter().map(|&r| self.rows[r]).collect();
        let minus: Vec<Trits<W>> = plus.iter().map(|&t| -t).collect();
        record(tally, cw.weight(), || mask_positions(cw.support()));
        let mut gray = GrayCounter::new(task.free.len(), 3);
        let counts = &mut tally.dist.counts;
        match tally.collect {
            None => {
                while let Some((j, old, new)) = gray.advance() {
                    cw = cw + if new > old { plus[j] } else { minus[j] };
                    counts[cw.weight()] += 1;
                }
            }
            Some(target) => {
                while let Some((j, old, new)) = gray.advance() {
                    cw = cw + if new > old { plus[j] } else { minus[j] };
                    let w = cw.weight();
                    counts[w] += 1;
                    if w == target {
                        tally.blocks.insert(mask_positions(cw.support()));
                    }
                }
            }
        }
    }
}

fn check_budget(code: &LinearCode, budget: u128) -> Result<u128> {
    let needed = pow_sat(code.field().q() as u128, code.dimension());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

fn run_tasks(
    code: &LinearCode,
    tasks: &[Task],
    opts: &EnumOptions,
    collect: Option<usize>,
) -> Result<Tally> {
    let n = code.length();
    let packed_ok = code.field().q() == 3 && n <= 128;
    let use_packed = match opts.path {
        EnumPath::Auto => packed_ok,
        EnumPath::Generic => false,
        EnumPath::Packed => {
            if !packed_ok {
                return Err(Error::OutOfRange(format!(
                    "packed path needs q = 3 and N ≤ 128, got q = {} and N = {n}",
                    code.field().q()
                )));
            }
            true
        }
    };
    let walker: Box<dyn Walker> = match (use_packed, n <= 64) {
        (true, true) => Box::new(PackedWalker::<u64>::new(code)),
        (true, false) => Box::new(PackedWalker::<u128>::new(code)),
        (false, _) => Box::new(GenericWalker::new(code)),
    };
    let one = |task: &Task| {
        let mut t = Tally::new(n, collect);
        walker.run(task, &mut t);
        t
    };
    if opts.workers <= 1 || tasks.len() <= 1 {
        return Ok(tasks
            .iter()
            .map(one)
            .fold(Tally::new(n, collect), Tally::merge));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::InternalInconsistency(format!("worker pool: {e}")))?;
    Ok(pool.install(|| {
        tasks
            .par_iter()
            .map(one)
            .reduce(|| Tally::new(n, collect), Tally::merge)
    }))
}

/// Exact weight distribution over all `q^K` codewords.
pub fn weight_distribution(code: &LinearCode, budget: u128) -> Result<WeightDistribution> {
    weight_distribution_with(code, &EnumOptions::with_budget(budget))
}

pub fn weight_distribution_with(
    code: &LinearCode,
    opts: &EnumOptions,
) -> Result<WeightDistribution> {
    Ok(distribution_and_supports(code, None, opts)?.0)
}

/// Weight distribution plus the distinct supports of weight-`w` codewords
/// (when `w` is given), in one pass over all codewords.
pub fn distribution_and_supports(
    code: &LinearCode,
    w: Option<usize>,
    opts: &EnumOptions,
) -> Result<(WeightDistribution, BlockFamily)> {
    let needed = check_budget(code, opts.budget)?;
    let q = code.field().q() as u128;
    let tasks = full_tasks(code.dimension(), q, opts);
    let tally = run_tasks(code, &tasks, opts, w)?;
    if tally.dist.total() != needed {
        return Err(Error::InternalInconsistency(format!(
            "enumerated {} codewords, expected {needed}",
            tally.dist.total()
        )));
    }
    let family = BlockFamily {
        ground_size: code.length(),
        blocks: tally.blocks.into_iter().collect(),
    };
    Ok((tally.dist, family))
}

/// Counts over one representative per scalar class of nonzero codewords.
fn projective_tally(
    code: &LinearCode,
    collect: Option<usize>,
    opts: &EnumOptions,
) -> Result<Tally> {
    let needed = check_budget(code, opts.budget)?;
    let q = code.field().q() as u128;
    let tasks = projective_tasks(code.dimension(), q, opts);
    let tally = run_tasks(code, &tasks, opts, collect)?;
    if tally.dist.total() * (q - 1) + 1 != needed {
        return Err(Error::InternalInconsistency(
            "scalar-class enumeration miscounted".into(),
        ));
    }
    Ok(tally)
}

/// Minimum nonzero weight by exhaustive search over scalar classes
/// (`(q^K - 1)/(q - 1)` codewords). `None` for the zero code.
pub fn min_distance(code: &LinearCode, budget: u128) -> Result<Option<usize>> {
    min_distance_with(code, &EnumOptions::with_budget(budget))
}

pub fn min_distance_with(code: &LinearCode, opts: &EnumOptions) -> Result<Option<usize>> {
    Ok(projective_tally(code, None, opts)?.dist.min_distance())
}

/// Distinct supports of the weight-`w` codewords.
pub fn min_weight_supports(code: &LinearCode, w: usize, budget: u128) -> Result<BlockFamily> {
    min_weight_supports_with(code, w, &EnumOptions::with_budget(budget))
}

pub fn min_weight_supports_with(
    code: &LinearCode,
    w: usize,
    opts: &EnumOptions,
) -> Result<BlockFamily> {
    if w > code.length() {
        return Ok(BlockFamily {
            ground_size: code.length(),
            blocks: Vec::new(),
        });
    }
    // scalar multiples share a support, so one codeword per class suffices
    let tally = projective_tally(code, Some(w), opts)?;
    Ok(BlockFamily {
        ground_size: code.length(),
        blocks: tally.blocks.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::prm::{prm_code, PrmParams};

    fn code(q: u64, rows: &[&[Elem]]) -> LinearCode {
        let f = Field::new(q).unwrap();
        let v: Vec<Vec<Elem>> = rows.iter().map(|r| r.to_vec()).collect();
        LinearCode::new(Matrix::from_rows(&f, rows[0].len(), &v).unwrap(), "test").unwrap()
    }

    /// Direct enumeration: every message, codeword by matrix product.
    fn brute_distribution(c: &LinearCode) -> Vec<u64> {
        let f = c.field();
        let q = f.q() as u128;
        let mut counts = vec![0u64; c.length() + 1];
        for t in 0..pow_sat(q, c.dimension()) {
            let msg = digits_of(t, q, c.dimension());
            let mut cw = vec![0; c.length()];
            for (i, &m) in msg.iter().enumerate() {
                f.axpy(&mut cw, m, c.generator().row(i));
            }
            counts[cw.iter().filter(|&&x| x != 0).count()] += 1;
        }
        counts
    }

    #[test]
    fn gray_counter_visits_every_tuple_once() {
        for (len, radix) in [(0usize, 3u32), (1, 2), (3, 2), (3, 3), (2, 5), (4, 4)] {
            let mut g = GrayCounter::new(len, radix);
            let mut seen = BTreeSet::new();
            seen.insert(g.digits().to_vec());
            while let Some((j, old, new)) = g.advance() {
                assert_eq!(old.abs_diff(new), 1);
                assert_eq!(g.digits()[j], new);
                assert!(seen.insert(g.digits().to_vec()));
            }
            assert_eq!(seen.len() as u128, pow_sat(radix as u128, len));
        }
    }

    #[test]
    fn ternary_addition_is_exhaustively_correct() {
        for a in 0..3u16 {
            for b in 0..3u16 {
                let s = Trits::<u64>::pack(&[a]) + Trits::pack(&[b]);
                assert_eq!(s.unpack(1), vec![(a + b) % 3]);
                assert_eq!((-Trits::<u64>::pack(&[a])).unpack(1), vec![(3 - a) % 3]);
            }
        }
        let v: Vec<Elem> = (0..100).map(|i| (i * 7 % 3) as Elem).collect();
        let t = Trits::<u128>::pack(&v);
        assert_eq!(t.unpack(100), v);
        assert_eq!(t.weight(), v.iter().filter(|&&x| x != 0).count());
    }

    #[test]
    fn tetracode_distribution() {
        let t = code(3, &[&[1, 1, 1, 0], &[0, 1, 2, 1]]);
        let d = weight_distribution(&t, 100).unwrap();
        assert_eq!(d.counts(), &[1, 0, 0, 8, 0]);
        assert_eq!(d.polynomial(), "x^4 + 8xy^3");
        assert_eq!(serde_json::to_string(&d).unwrap(), "[[0,1],[3,8]]");
        let blocks = min_weight_supports(&t, 3, 100).unwrap();
        assert_eq!(blocks.len(), 4);
        assert_eq!(
            design_lambda(&blocks, 1),
            DesignCheck::Design {
                t: 1,
                v: 4,
                block_size: 3,
                lambda: 3
            }
        );
        assert!(min_weight_supports(&t, 2, 100).unwrap().is_empty());
        assert_eq!(min_distance(&t, 100).unwrap(), Some(3));
    }

    #[test]
    fn zero_code() {
        let f = Field::new(5).unwrap();
        let z = LinearCode::new(Matrix::zeros(&f, 0, 6), "zero").unwrap();
        let d = weight_distribution(&z, 10).unwrap();
        assert_eq!(d.pairs(), vec![(0, 1)]);
        assert_eq!(d.polynomial(), "x^6");
        assert_eq!(min_distance(&z, 10).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let c = prm_code(&PrmParams::new(2, 2, 5).unwrap()).unwrap();
        assert_eq!(
            weight_distribution(&c, 1000),
            Err(Error::BudgetExceeded {
                needed: 15625,
                budget: 1000
            })
        );
        assert!(min_distance(&c, 15624).is_err());
        assert!(weight_distribution(&c, 15625).is_ok());
    }

    #[test]
    fn generic_packed_and_brute_force_agree() {
        for (n, k, q) in [
            (1, 1, 3),
            (2, 1, 3),
            (2, 2, 3),
            (2, 3, 3),
            (1, 2, 4),
            (2, 1, 4),
            (1, 3, 5),
            (2, 3, 2),
            (3, 1, 3),
        ] {
            let c = prm_code(&PrmParams::new(n, k, q).unwrap()).unwrap();
            let brute = brute_distribution(&c);
            for path in [EnumPath::Generic, EnumPath::Auto] {
                for workers in [1, 3] {
                    let opts = EnumOptions {
                        workers,
                        path,
                        min_task_steps: 10,
                        ..Default::default()
                    };
                    let d = weight_distribution_with(&c, &opts).unwrap();
                    assert_eq!(
                        d.counts(),
                        &brute[..],
                        "n={n} k={k} q={q} {path:?} {workers}"
                    );
                }
            }
        }
    }

    #[test]
    fn packed_requires_ternary() {
        let c = prm_code(&PrmParams::new(2, 1, 5).unwrap()).unwrap();
        let opts = EnumOptions {
            path: EnumPath::Packed,
            ..Default::default()
        };
        assert!(weight_distribution_with(&c, &opts).is_err());
    }

    #[test]
    fn splitting_preserves_results() {
        let serial = EnumOptions::default();
        let split = EnumOptions {
            workers: 4,
            min_task_steps: 10,
            ..Default::default()
        };
        assert_eq!(full_tasks(6, 5, &serial).len(), 1);
        assert_eq!(
            full_tasks(
                6,
                5,
                &EnumOptions {
                    workers: 4,
                    ..Default::default()
                }
            )
            .len(),
            1
        );
        assert!(full_tasks(6, 5, &split).len() > 1);
        assert!(projective_tasks(6, 5, &split).len() > 6);
        for (n, k, q, w) in [(2, 2, 5, 20), (2, 3, 3, 6), (2, 1, 4, 16)] {
            let c = prm_code(&PrmParams::new(n, k, q).unwrap()).unwrap();
            let a = distribution_and_supports(&c, Some(w), &serial).unwrap();
            let b = distribution_and_supports(&c, Some(w), &split).unwrap();
            assert_eq!(a, b);
            assert_eq!(min_weight_supports_with(&c, w, &split).unwrap(), a.1);
            assert_eq!(min_distance_with(&c, &split).unwrap(), a.0.min_distance());
        }
    }

    #[test]
    fn design_checks() {
        // all 3-subsets of a 6-set: λ = C(4, 1) = 4 for t = 2
        let mut blocks = Vec::new();
        for a in 0..6u32 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    blocks.push(vec![a, b, c]);
                }
            }
        }
        let fam = BlockFamily::new(6, blocks);
        assert_eq!(
            design_lambda(&fam, 2),
            DesignCheck::Design {
                t: 2,
                v: 6,
                block_size: 3,
                lambda: 4
            }
        );
        let bad = BlockFamily::new(3, vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(design_lambda(&bad, 2), DesignCheck::NotADesign);
        assert_eq!(
            design_lambda(&BlockFamily::new(3, vec![]), 2),
            DesignCheck::NotADesign
        );
        let mixed = BlockFamily::new(3, vec![vec![0, 1], vec![0, 1, 2]]);
        assert_eq!(design_lambda(&mixed, 1), DesignCheck::NotADesign);
    }

    #[test]
    fn polynomial_rendering() {
        let d = WeightDistribution::from_counts(vec![1, 0, 3, 4]);
        assert_eq!(d.polynomial(), "x^3 + 3xy^2 + 4y^3");
        assert_eq!(WeightDistribution::from_counts(vec![1]).polynomial(), "1");
    }
}
