//! Embedded reference data and the end-to-end self test.

use serde::Serialize;

use crate::analyze::{
    design_lambda, distribution_and_supports, min_distance_with, BlockFamily, DesignCheck,
    EnumOptions, WeightDistribution,
};
use crate::error::Result;
use crate::prm::{
    binomial, classify, construct, min_dist_formula, prm_code, HullPrediction, PrmParams,
};
use crate::sweep::{run_sweep, SweepSpec};

/// Known weight enumerator and design of one code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reference {
    pub n: usize,
    pub k: u32,
    pub q: u32,
    /// Every nonzero `(w, A_w)`, including `A_0 = 1`.
    pub enumerator: &'static [(usize, u64)],
    pub design_weight: usize,
    pub blocks: usize,
    pub t: usize,
    pub lambda: u64,
}

/// `C(3,3,3)`, a `[40, 20, 9]` ternary code whose weight-9 supports form a
/// 2-(40, 9, 24) design.
pub const C333: Reference = Reference {
    n: 3,
    k: 3,
    q: 3,
    enumerator: &[
        (0, 1),
        (9, 1040),
        (12, 18720),
        (15, 1100736),
        (18, 25761840),
        (21, 236377440),
        (24, 908079120),
        (27, 1388750720),
        (30, 783679104),
        (33, 137535840),
        (36, 5468320),
        (39, 11520),
    ],
    design_weight: 9,
    blocks: 520,
    t: 2,
    lambda: 24,
};

impl Reference {
    pub fn params(&self) -> PrmParams {
        PrmParams {
            n: self.n,
            k: self.k,
            q: self.q,
        }
    }

    pub fn count(&self, w: usize) -> u64 {
        self.enumerator.iter().find(|p| p.0 == w).map_or(0, |p| p.1)
    }

    /// Checks that don't need the enumeration: the total is `q^K`, scalar
    /// classes divide every count, and the design counts are consistent.
    pub fn consistency(&self) -> std::result::Result<(), String> {
        let p = self.params();
        let c = construct(&p).map_err(|e| e.to_string())?;
        let (n_len, k_dim) = (c.code.length(), c.code.dimension());
        let total: u128 = self.enumerator.iter().map(|p| p.1 as u128).sum();
        let expected = (self.q as u128).pow(k_dim as u32);
        if total != expected {
            return Err(format!(
                "coefficients sum to {total}, expected {}^{k_dim} = {expected}",
                self.q
            ));
        }
        if self.count(0) != 1 {
            return Err("A_0 must be 1".into());
        }
        if let Some(&(w, a)) = self
            .enumerator
            .iter()
            .find(|p| p.0 > 0 && p.1 % (self.q as u64 - 1) != 0)
        {
            return Err(format!("A_{w} = {a} is not divisible by q-1"));
        }
        let d = min_dist_formula(&p).map_err(|e| e.to_string())? as usize;
        let min = self
            .enumerator
            .iter()
            .filter(|p| p.0 > 0)
            .map(|p| p.0)
            .min();
        if min != Some(d) {
            return Err(format!(
                "smallest nonzero weight {min:?}, distance formula gives {d}"
            ));
        }
        // λ·C(v, t) = b·C(k, t)
        let lhs = binomial(n_len as i64, self.t as i64) * self.lambda;
        let rhs = binomial(self.design_weight as i64, self.t as i64) * self.blocks as u64;
        if lhs != rhs {
            return Err(format!("λ·C(v,t) = {lhs} but b·C(k,t) = {rhs}"));
        }
        Ok(())
    }

    pub fn check_enumerator(&self, dist: &WeightDistribution) -> std::result::Result<(), String> {
        let got = dist.pairs();
        if got.as_slice() != self.enumerator {
            let diffs: Vec<String> = (0..=dist.length())
                .filter(|&w| dist.count(w) != self.count(w))
                .map(|w| {
                    format!(
                        "A_{w}: computed {} reference {}",
                        dist.count(w),
                        self.count(w)
                    )
                })
                .collect();
            return Err(diffs.join("; "));
        }
        Ok(())
    }

    pub fn check_design(
        &self,
        dist: &WeightDistribution,
        family: &BlockFamily,
    ) -> std::result::Result<(), String> {
        let words = dist.count(self.design_weight);
        if words != self.count(self.design_weight) {
            return Err(format!(
                "{words} codewords of weight {}",
                self.design_weight
            ));
        }
        if family.len() != self.blocks {
            return Err(format!(
                "{} distinct supports, expected {}",
                family.len(),
                self.blocks
            ));
        }
        match design_lambda(family, self.t) {
            DesignCheck::Design { lambda, .. } if lambda == self.lambda => Ok(()),
            other => Err(format!(
                "design check gave {other:?}, expected λ = {}",
                self.lambda
            )),
        }
    }
}

/// A printed `[N, K, D]` triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KnownParameters {
    pub n: usize,
    pub k: u32,
    pub q: u32,
    pub length: u64,
    pub dimension: u64,
    pub distance: u64,
}

pub const KNOWN_PARAMETERS: [KnownParameters; 5] = [
    KnownParameters {
        n: 1,
        k: 1,
        q: 3,
        length: 4,
        dimension: 2,
        distance: 3,
    },
    KnownParameters {
        n: 3,
        k: 3,
        q: 3,
        length: 40,
        dimension: 20,
        distance: 9,
    },
    KnownParameters {
        n: 1,
        k: 2,
        q: 5,
        length: 6,
        dimension: 3,
        distance: 4,
    },
    KnownParameters {
        n: 2,
        k: 1,
        q: 3,
        length: 13,
        dimension: 3,
        distance: 9,
    },
    KnownParameters {
        n: 2,
        k: 2,
        q: 5,
        length: 31,
        dimension: 6,
        distance: 20,
    },
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    /// Include the full 3^20 enumeration.
    pub full: bool,
    pub workers: usize,
    pub reference: Reference,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            full: false,
            workers: 1,
            reference: C333,
        }
    }
}

fn check(name: &'static str, r: std::result::Result<String, String>) -> Check {
    match r {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

fn err_str<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn known_parameters(full: bool, opts: &EnumOptions) -> std::result::Result<String, String> {
    let mut checked = Vec::new();
    for kp in KNOWN_PARAMETERS {
        let p = err_str(PrmParams::new(kp.n, kp.k, kp.q))?;
        let c = err_str(prm_code(&p))?;
        let d = err_str(min_dist_formula(&p))?;
        let got = (c.length() as u64, c.dimension() as u64, d);
        if got != (kp.length, kp.dimension, kp.distance) {
            return Err(format!("{p}: got {got:?}"));
        }
        // the 3^20 distance is covered by the full enumeration
        if c.dimension() <= 12 || full {
            let exhaustive = err_str(min_distance_with(&c, opts))?;
            if exhaustive != Some(kp.distance as usize) {
                return Err(format!("{p}: exhaustive distance {exhaustive:?}"));
            }
            checked.push(format!("[{},{},{}]", kp.length, kp.dimension, kp.distance));
        }
    }
    Ok(format!("exhaustive distance for {}", checked.join(" ")))
}

fn small_sweep(workers: usize) -> std::result::Result<String, String> {
    let spec = SweepSpec {
        n_values: vec![1, 2],
        q_values: vec![2, 3, 4, 5],
        workers,
        ..Default::default()
    };
    let r = err_str(run_sweep(&spec))?;
    let s = r.summary;
    let line = format!(
        "{} points, {} agree, {} disagree, {} errors",
        s.points, s.agree, s.disagree, s.errors
    );
    if r.all_ok() {
        Ok(line)
    } else {
        Err(line)
    }
}

fn no_closed_form() -> std::result::Result<String, String> {
    let r = err_str(classify(&PrmParams { n: 3, k: 4, q: 4 }))?;
    if r.predicted.hull_dim != HullPrediction::NoClosedForm {
        return Err("(3,4,4) unexpectedly has a closed form".into());
    }
    Ok(format!(
        "PRM(n=3,k=4,q=4) constructive hull dimension {}",
        r.constructed.hull_dim
    ))
}

fn tetracode(opts: &EnumOptions) -> std::result::Result<String, String> {
    let p = PrmParams { n: 1, k: 1, q: 3 };
    let c = err_str(prm_code(&p))?;
    if !c.is_self_dual() {
        return Err("C(1,1,3) is not self-dual".into());
    }
    let (dist, fam) = err_str(distribution_and_supports(&c, Some(3), opts))?;
    let poly = dist.polynomial();
    if poly != "x^4 + 8xy^3" {
        return Err(format!("enumerator {poly}"));
    }
    match design_lambda(&fam, 1) {
        DesignCheck::Design { lambda: 3, .. } if fam.len() == 4 => {
            Ok(format!("self-dual, {poly}, 1-(4,3,3)"))
        }
        other => Err(format!("{} blocks, {other:?}", fam.len())),
    }
}

fn full_enumeration(r: &Reference, opts: &EnumOptions) -> Vec<Check> {
    let code = match prm_code(&r.params()) {
        Ok(c) => c,
        Err(e) => return vec![check("enumerator", Err(e.to_string()))],
    };
    match distribution_and_supports(&code, Some(r.design_weight), opts) {
        Ok((dist, fam)) => vec![
            check(
                "enumerator",
                r.check_enumerator(&dist).map(|_| dist.polynomial()),
            ),
            check(
                "design",
                r.check_design(&dist, &fam).map(|_| {
                    format!(
                        "{} blocks, {}-({},{},{})",
                        fam.len(),
                        r.t,
                        fam.ground_size,
                        r.design_weight,
                        r.lambda
                    )
                }),
            ),
        ],
        Err(e) => vec![check("enumerator", Err(e.to_string()))],
    }
}

/// Runs the self test. The full enumeration is only included with
/// `opts.full`.
pub fn run_selftest(opts: &SelftestOptions) -> Vec<Check> {
    let enum_opts = EnumOptions {
        workers: opts.workers,
        ..Default::default()
    };
    let mut checks = vec![
        check(
            "reference",
            opts.reference
                .consistency()
                .map(|_| "coefficients, divisibility, design counts".into()),
        ),
        check("parameters", known_parameters(opts.full, &enum_opts)),
        check("tetracode", tetracode(&enum_opts)),
        check("sweep", small_sweep(opts.workers)),
        check("no-closed-form", no_closed_form()),
    ];
    if opts.full {
        checks.extend(full_enumeration(&opts.reference, &enum_opts));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_is_consistent() {
        assert_eq!(C333.consistency(), Ok(()));
        assert_eq!(C333.enumerator.len(), 12);
    }

    #[test]
    fn corrupted_reference_fails() {
        let mut coeffs = C333.enumerator.to_vec();
        coeffs[1].1 = 1042;
        let bad = Reference {
            enumerator: Box::leak(coeffs.into_boxed_slice()),
            ..C333
        };
        assert!(bad.consistency().is_err());
        let checks = run_selftest(&SelftestOptions {
            reference: bad,
            ..Default::default()
        });
        assert!(!checks[0].passed);
        assert!(checks[1..].iter().all(|c| c.passed), "{checks:?}");
        let wrong_lambda = Reference { lambda: 25, ..C333 };
        assert!(wrong_lambda.consistency().is_err());
    }

    #[test]
    fn check_enumerator_reports_differences() {
        let mut counts = vec![0u64; 41];
        for &(w, a) in C333.enumerator {
            counts[w] = a;
        }
        let good = WeightDistribution::from_counts(counts.clone());
        assert_eq!(C333.check_enumerator(&good), Ok(()));
        counts[12] -= 2;
        counts[13] += 2;
        let err = C333
            .check_enumerator(&WeightDistribution::from_counts(counts))
            .unwrap_err();
        assert!(err.contains("A_12") && err.contains("A_13"), "{err}");
    }
}
