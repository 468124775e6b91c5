//! Seeded randomized property suites.
//!
//! Every instance draws from its own ChaCha8 stream derived from the seed,
//! the suite index and the instance index, so results do not depend on the
//! execution mode.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{
    edge_ideal, hp_ideal, is_chordal, posets_up_to_iso, squarefree_veronese, veronese_type, Graph,
    VeroneseSpec, DEFAULT_POSET_IDEAL_CAP,
};
use crate::error::Result;
use crate::linquot::{
    depth_by_linear_quotients, find_linear_quotients_order, is_polymatroidal, revlex_order,
    verify_linear_quotients, DEFAULT_SEARCH_CAP,
};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};
use crate::par;
use crate::resolution::Oracle;
use crate::toric::{
    burch_brodmann_check, depth_lower_bounds, rees_groebner, thm25_generator_order, x_condition,
    ReesConfig, DEFAULT_BOUNDS_CAP,
};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_INSTANCES: usize = 16;

/// Suite names in run order.
pub const SUITES: [&str; 8] = [
    "subset-strand",
    "strand-growth",
    "chordal-complement",
    "squarefree-bound",
    "burch-brodmann",
    "linear-quotients-formula",
    "veronese-type",
    "rees-orders",
];

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub seed: u64,
    /// Instances per suite.
    pub instances: usize,
    pub oracle: Oracle,
    pub rees: ReesConfig,
    pub search_cap: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: DEFAULT_SEED,
            instances: DEFAULT_INSTANCES,
            oracle: Oracle::default(),
            rees: ReesConfig::default(),
            search_cap: DEFAULT_SEARCH_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub property: String,
    /// The property is checked only over finitely many powers.
    pub observational: bool,
    /// Instances on which the property was checked.
    pub instances: usize,
    /// Drawn instances that did not meet the suite's hypotheses.
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl SweepReport {
    pub fn total_instances(&self) -> usize {
        self.suites.iter().map(|s| s.instances).sum()
    }

    pub fn total_violations(&self) -> usize {
        self.suites.iter().map(|s| s.violations.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.total_violations() == 0
    }
}

/// Outcome of one instance.
enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let suites = SUITES
        .iter()
        .map(|name| run_suite(name, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { seed: cfg.seed, suites })
}

pub fn run_suite(name: &str, cfg: &SweepConfig) -> Result<SuiteReport> {
    let idx = SUITES
        .iter()
        .position(|s| *s == name)
        .ok_or_else(|| crate::Error::InvalidSpec(format!("unknown suite `{name}`")))?;
    let (property, observational): (&str, bool) = match name {
        "subset-strand" => ("J ⊆ I with initial degree d of I: β_{i,i+d}(J) ≤ β_{i,i+d}(I)", false),
        "strand-growth" => ("β_{i,i+(k+1)d}(I^{k+1}) ≥ β_{i,i+kd}(I^k) for k ≤ 2", false),
        "chordal-complement" => (
            "edge ideals with chordal complement: I^k linear for k ≤ 3 and depth non-increasing",
            true,
        ),
        "squarefree-bound" => ("squarefree I: depth S/I^k ≤ depth S/I for k ≤ 3", false),
        "burch-brodmann" => ("equigenerated families: min_k depth S/I^k ≤ n - ℓ(I) over computed k", true),
        "linear-quotients-formula" => ("linear quotients certificate: n - q - 1 equals the oracle depth", false),
        "veronese-type" => ("Veronese type with t ≥ 0: oracle depth = t = revlex formula depth", false),
        _ => (
            "x-condition bases: standard-expression order has linear quotients for k ≤ 3; ρ-bounds ≤ oracle depth",
            false,
        ),
    };
    let indices: Vec<usize> = (0..cfg.instances).collect();
    let outcomes = par::try_map(cfg.oracle.execution, &indices, |&i| {
        let mut rng = instance_rng(cfg.seed, idx, i);
        run_instance(name, &mut rng, cfg)
    })?;
    let mut report = SuiteReport {
        name: name.into(),
        property: property.into(),
        observational,
        instances: 0,
        skipped: 0,
        violations: Vec::new(),
    };
    for (instance, outcome) in outcomes {
        match outcome {
            Outcome::Pass => report.instances += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(detail) => {
                report.instances += 1;
                report.violations.push(Violation { instance, detail });
            }
        }
    }
    Ok(report)
}

fn instance_rng(seed: u64, suite: usize, instance: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | instance as u64);
    rng
}

fn run_instance(name: &str, rng: &mut ChaCha8Rng, cfg: &SweepConfig) -> Result<(String, Outcome)> {
    let oracle = &cfg.oracle;
    match name {
        "subset-strand" => {
            let n = rng.gen_range(3..=5);
            let i = random_ideal(rng, n, 2..=5, 2..=3, false);
            let d = min_degree(&i);
            let mut sub: Vec<Monomial> = i.gens().to_vec();
            sub.shuffle(rng);
            sub.truncate(rng.gen_range(1..=sub.len()));
            // multiples of generators stay inside I
            for g in sub.clone() {
                if rng.gen_bool(0.3) {
                    let v = Monomial::var(n, rng.gen_range(0..n));
                    sub.push(g.checked_mul(&v)?);
                }
            }
            let j = MonomialIdeal::new(i.vars().clone(), sub)?;
            let (bi, bj) = (oracle.betti_table(&i)?, oracle.betti_table(&j)?);
            let bad = (0..=n).find(|&k| bj.graded_rank(k, k as u64 + d) > bi.graded_rank(k, k as u64 + d));
            let desc = format!("I = {}; J = {}", inline(&i), inline(&j));
            Ok((desc, bad.map_or(Outcome::Pass, |k| Outcome::Fail(format!("strand fails at i = {k}")))))
        }
        "strand-growth" => {
            let n = rng.gen_range(3..=4);
            let i = random_ideal(rng, n, 2..=3, 2..=2, false);
            let d = min_degree(&i);
            let mut prev = oracle.betti_table(&i)?;
            let mut power = i.clone();
            for k in 1..=2u64 {
                power = power.product(&i)?;
                let next = oracle.betti_table(&power)?;
                for s in 0..=n {
                    let (a, b) = (prev.graded_rank(s, s as u64 + k * d), next.graded_rank(s, s as u64 + (k + 1) * d));
                    if b < a {
                        return Ok((
                            inline(&i),
                            Outcome::Fail(format!("k = {k}, i = {s}: {b} < {a}")),
                        ));
                    }
                }
                prev = next;
            }
            Ok((inline(&i), Outcome::Pass))
        }
        "chordal-complement" => {
            let n = rng.gen_range(3..=6);
            let Some(g) = random_chordal_complement(rng, n) else {
                return Ok((String::from("no graph"), Outcome::Skip));
            };
            let i = edge_ideal(&g)?;
            let profile = oracle.depth_profile(&i, 3)?;
            let mut power = i.clone();
            for k in 1..=3 {
                if k > 1 {
                    power = power.product(&i)?;
                }
                if !oracle.has_linear_resolution(&power)? {
                    return Ok((inline(&i), Outcome::Fail(format!("I^{k} has no linear resolution"))));
                }
            }
            let outcome = if profile.is_non_increasing() {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("profile {:?} increases", profile.values))
            };
            Ok((inline(&i), outcome))
        }
        "squarefree-bound" => {
            let n = rng.gen_range(3..=5);
            let i = random_ideal(rng, n, 2..=4, 2..=3, true);
            let profile = oracle.depth_profile(&i, 3)?;
            let first = profile.values[0];
            let outcome = match profile.values.iter().position(|&v| v > first) {
                Some(k) => Outcome::Fail(format!("depth S/I^{} = {} > {first}", k + 1, profile.values[k])),
                None => Outcome::Pass,
            };
            Ok((inline(&i), outcome))
        }
        "burch-brodmann" => {
            let (i, kmax) = random_equigenerated_family(rng)?;
            let profile = oracle.depth_profile(&i, kmax)?;
            let r = burch_brodmann_check(&i, &profile)?;
            let outcome = if r.min_ok {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("min depth {} > n - ℓ = {}", r.min_depth, r.bound))
            };
            Ok((inline(&i), outcome))
        }
        "linear-quotients-formula" => {
            let n = rng.gen_range(3..=5);
            let i = if rng.gen_bool(0.5) {
                let squarefree = rng.gen_bool(0.5);
                random_ideal(rng, n, 2..=5, 2..=3, squarefree)
            } else {
                random_equigenerated_family(rng)?.0
            };
            let Some(cert) = find_linear_quotients_order(&i, cfg.search_cap)? else {
                return Ok((inline(&i), Outcome::Skip));
            };
            let formula = depth_by_linear_quotients(&cert, i.nvars())?;
            let truth = oracle.depth(&i)?;
            let outcome = if formula == truth {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("formula {formula} vs oracle {truth}"))
            };
            Ok((inline(&i), outcome))
        }
        "veronese-type" => {
            let spec = random_veronese_spec(rng);
            let desc = format!("n={} d={} e={:?}", spec.n, spec.d, spec.bounds);
            if spec.t() < 0 || spec.bounds.iter().sum::<u32>() < spec.d {
                return Ok((desc, Outcome::Skip));
            }
            let i = veronese_type(&spec)?;
            let t = spec.t() as usize;
            let truth = oracle.depth(&i)?;
            let cert = verify_linear_quotients(&i, &revlex_order(&i)?)?;
            let formula = if cert.valid {
                Some(depth_by_linear_quotients(&cert, i.nvars())?)
            } else {
                None
            };
            let outcome = if truth == t && formula == Some(t) {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("t = {t}, oracle {truth}, revlex formula {formula:?}"))
            };
            Ok((desc, outcome))
        }
        _ => {
            let n = rng.gen_range(3..=6);
            let Some(g) = random_chordal_complement(rng, n) else {
                return Ok((String::from("no graph"), Outcome::Skip));
            };
            let i = edge_ideal(&g)?;
            let (ring, gb) = rees_groebner(&i, &cfg.rees)?;
            if !x_condition(&gb) {
                return Ok((inline(&i), Outcome::Skip));
            }
            let bounds = depth_lower_bounds(&gb, 3, DEFAULT_BOUNDS_CAP)?;
            let profile = oracle.depth_profile(&i, 3)?;
            for k in 1..=3u32 {
                let order = thm25_generator_order(&i, k, &ring, &gb)?;
                let cert = verify_linear_quotients(&i.power(k)?, &order)?;
                if !cert.valid {
                    return Ok((inline(&i), Outcome::Fail(format!("order for k = {k} fails"))));
                }
                let b = bounds.per_k[k as usize - 1].bound;
                if b > profile.at(k as usize) {
                    return Ok((
                        inline(&i),
                        Outcome::Fail(format!("bound {b} exceeds depth {} at k = {k}", profile.at(k as usize))),
                    ));
                }
            }
            Ok((inline(&i), Outcome::Pass))
        }
    }
}

fn min_degree(i: &MonomialIdeal) -> u64 {
    i.gens().iter().map(Monomial::degree).min().unwrap_or(0)
}

/// One-line rendering `g1, g2, ...` for reports.
pub fn inline(i: &MonomialIdeal) -> String {
    i.gens()
        .iter()
        .map(|g| g.display(i.vars()).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32, squarefree: bool) -> Monomial {
    let mut e = vec![0u32; n];
    if squarefree {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        for &i in idx.iter().take(d as usize) {
            e[i] = 1;
        }
    } else {
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
    }
    Monomial::new(e)
}

/// Random proper ideal with `ngens` drawn generators (before minimalization).
pub fn random_ideal(
    rng: &mut ChaCha8Rng,
    n: usize,
    ngens: std::ops::RangeInclusive<usize>,
    degrees: std::ops::RangeInclusive<u32>,
    squarefree: bool,
) -> MonomialIdeal {
    let vars = Arc::new(VariableSet::indexed("x", n));
    let count = rng.gen_range(ngens);
    let gens: Vec<Monomial> = (0..count)
        .map(|_| {
            let d = rng.gen_range(degrees.clone());
            let d = if squarefree { d.min(n as u32) } else { d };
            random_monomial(rng, n, d, squarefree)
        })
        .collect();
    MonomialIdeal::new(vars, gens).expect("same ambient ring")
}

/// Random graph on `n` vertices whose complement is chordal (and which has an edge).
pub fn random_chordal_complement(rng: &mut ChaCha8Rng, n: usize) -> Option<Graph> {
    for _ in 0..100 {
        // grow a chordal graph by attaching each new vertex to a clique
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for v in 1..n {
            let mut clique: Vec<usize> = Vec::new();
            let mut cands: Vec<usize> = (0..v).filter(|_| rng.gen_bool(0.5)).collect();
            cands.shuffle(rng);
            for u in cands {
                if clique.iter().all(|&w| edges.contains(&(w.min(u), w.max(u)))) {
                    clique.push(u);
                }
            }
            edges.extend(clique.into_iter().map(|u| (u, v)));
        }
        let h = Graph::new(n, edges).ok()?;
        debug_assert!(is_chordal(&h).chordal);
        let g = h.complement();
        if g.num_edges() > 0 {
            return Some(g);
        }
    }
    None
}

fn random_veronese_spec(rng: &mut ChaCha8Rng) -> VeroneseSpec {
    let n = rng.gen_range(2..=5);
    let d = rng.gen_range(2..=4u32);
    let mut bounds: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
    bounds.sort_unstable();
    VeroneseSpec::new(n, d, bounds).expect("valid bounds")
}

/// Equigenerated ideal from a random family, with a `kmax` for its profile.
fn random_equigenerated_family(rng: &mut ChaCha8Rng) -> Result<(MonomialIdeal, usize)> {
    Ok(match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(3..=5);
            let d = rng.gen_range(2..n as u32);
            (squarefree_veronese(n, d)?, 3)
        }
        1 => loop {
            let spec = random_veronese_spec(rng);
            if let Ok(i) = veronese_type(&spec) {
                if is_polymatroidal(&i).polymatroidal {
                    break (i, 3);
                }
            }
        },
        2 => {
            let n = rng.gen_range(3..=6);
            match random_chordal_complement(rng, n) {
                Some(g) => (edge_ideal(&g)?, 3),
                None => (squarefree_veronese(4, 2)?, 3),
            }
        }
        _ => {
            let n = rng.gen_range(1..=3);
            let posets = posets_up_to_iso(n)?;
            let p = posets.choose(rng).expect("nonempty list");
            (hp_ideal(p, DEFAULT_POSET_IDEAL_CAP)?, p.rank() + 2)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        let a: u64 = instance_rng(1, 2, 3).gen();
        let b: u64 = instance_rng(1, 2, 3).gen();
        let c: u64 = instance_rng(1, 2, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn chordal_complements_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..=6 {
            let g = random_chordal_complement(&mut rng, n).unwrap();
            assert!(is_chordal(&g.complement()).chordal);
        }
    }

    #[test]
    fn small_sweep_has_no_violations() {
        let cfg = SweepConfig {
            instances: 2,
            ..SweepConfig::default()
        };
        let report = run_sweep(&cfg).unwrap();
        assert_eq!(report.suites.len(), SUITES.len());
        assert!(report.passed(), "{report:?}");
    }
}
