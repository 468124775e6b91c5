//! Acceptance criteria 1-9, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use depthlab::constructions::{
    delta, edge_ideal, hp_ideal, ideal_for_increasing_f, nonmonotone_example, posets_up_to_iso,
    predicted_squarefree_veronese_profile, squarefree_veronese, veronese_type, DepthFunctionSpec, Graph,
    VeroneseSpec, DEFAULT_DELTA_CAP, DEFAULT_POSET_IDEAL_CAP, NONMONOTONE_PROFILE,
};
use depthlab::linquot::{depth_by_linear_quotients, revlex_order, verify_linear_quotients};
use depthlab::sweep::{random_chordal_complement, run_sweep, SweepConfig};
use depthlab::toric::{
    depth_lower_bounds, rees_groebner, thm25_generator_order, write_groebner, x_condition, ReesConfig,
    DEFAULT_BOUNDS_CAP,
};
use depthlab::{MonomialIdeal, Oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: depthlab::Error) -> String {
    e.to_string()
}

const WORKED_LEADS: [&str; 12] = [
    "x5 y1", "x4 y2", "x5 y3", "x6 y4", "x5 y5", "x4 y3", "x6 y2", "x6 y1", "x1 y4 y5", "x2 y3 y4",
    "x1 y3 y4", "x1 y2 y5",
];

fn worked_ideal() -> Result<MonomialIdeal, String> {
    edge_ideal(&Graph::whiskered_triangle()).map_err(err)
}

fn c1_worked_profile() -> Outcome {
    let profile = Oracle::default().depth_profile(&worked_ideal()?, 3).map_err(err)?;
    ensure(profile.values == [3, 0, 0], || format!("oracle profile {:?}, expected [3, 0, 0]", profile.values))?;
    Ok(format!("profile {:?}", profile.values))
}

fn c2_worked_basis() -> Outcome {
    let ideal = worked_ideal()?;
    let (ring, gb) = rees_groebner(&ideal, &ReesConfig::default()).map_err(err)?;
    let leads: BTreeSet<String> = gb.leads().map(|m| ring.display_monomial(m)).collect();
    let expected: BTreeSet<String> = WORKED_LEADS.iter().map(|s| s.to_string()).collect();
    ensure(leads == expected, || format!("leads {leads:?}, expected {expected:?}"))?;
    ensure(x_condition(&gb), || "x-condition fails".into())?;
    let bounds = depth_lower_bounds(&gb, 3, DEFAULT_BOUNDS_CAP).map_err(err)?;
    let per_k: Vec<usize> = bounds.per_k.iter().map(|b| b.bound).collect();
    ensure(per_k == [3, 0, 0], || format!("bounds {per_k:?}, expected [3, 0, 0]"))?;
    ensure(bounds.limit.bound == 0, || format!("limit bound {}, expected 0", bounds.limit.bound))?;
    let golden_path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/whiskered_triangle.gb");
    if std::env::var_os("DEPTHLAB_BLESS").is_some() {
        std::fs::write(golden_path, write_groebner(&ring, &gb)).map_err(|e| format!("{golden_path}: {e}"))?;
    }
    let golden = std::fs::read_to_string(golden_path).map_err(|e| format!("{golden_path}: {e}"))?;
    ensure(write_groebner(&ring, &gb) == golden, || "basis text differs from the golden file".into())?;
    Ok(format!("{} leads, bounds {per_k:?}, limit 0", leads.len()))
}

fn c3_squarefree_veronese() -> Outcome {
    let oracle = Oracle::default();
    let mut checked = 0;
    for n in 3..=6usize {
        for d in 2..n as u32 {
            let ideal = squarefree_veronese(n, d).map_err(err)?;
            let predicted = predicted_squarefree_veronese_profile(n, d, 3);
            let profile = oracle.depth_profile(&ideal, 3).map_err(err)?;
            ensure(profile.values == predicted, || {
                format!("I_{{{n},{d}}}: oracle {:?}, formula {predicted:?}", profile.values)
            })?;
            checked += 3;
        }
    }
    let mut certified = 0;
    for n in 3..=7usize {
        for d in 2..n as u32 {
            let ideal = squarefree_veronese(n, d).map_err(err)?;
            let predicted = predicted_squarefree_veronese_profile(n, d, 5);
            for k in 1..=5u32 {
                let power = ideal.power(k).map_err(err)?;
                let cert = verify_linear_quotients(&power, &revlex_order(&power).map_err(err)?).map_err(err)?;
                ensure(cert.valid, || format!("I_{{{n},{d}}}^{k}: revlex order lacks linear quotients"))?;
                let depth = depth_by_linear_quotients(&cert, n).map_err(err)?;
                let want = predicted[k as usize - 1];
                ensure(depth == want, || format!("I_{{{n},{d}}}^{k}: n - q - 1 = {depth}, formula {want}"))?;
                certified += 1;
            }
        }
    }
    Ok(format!("{checked} oracle checks, {certified} revlex certificates"))
}

fn c4_veronese_type() -> Outcome {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut specs = Vec::new();
    while specs.len() < 20 {
        let n = rng.gen_range(2..=5usize);
        let d = rng.gen_range(2..=5u32);
        let mut bounds: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
        bounds.sort_unstable();
        let spec = VeroneseSpec::new(n, d, bounds).map_err(err)?;
        if spec.t() >= 0 && spec.bounds.iter().sum::<u32>() >= d {
            specs.push(spec);
        }
    }
    for spec in &specs {
        let ideal = veronese_type(spec).map_err(err)?;
        let t = spec.t() as usize;
        let depth = oracle.depth(&ideal).map_err(err)?;
        ensure(depth == t, || format!("{spec:?}: oracle {depth}, t = {t}"))?;
        let cert = verify_linear_quotients(&ideal, &revlex_order(&ideal).map_err(err)?).map_err(err)?;
        ensure(cert.valid, || format!("{spec:?}: revlex order lacks linear quotients"))?;
        let lq = depth_by_linear_quotients(&cert, spec.n).map_err(err)?;
        ensure(lq == t, || format!("{spec:?}: n - q - 1 = {lq}, t = {t}"))?;
    }
    Ok(format!("{} specs", specs.len()))
}

fn c5_posets() -> Outcome {
    let oracle = Oracle::default();
    let mut posets = 0;
    let mut checks = 0;
    for size in 1..=4 {
        for p in posets_up_to_iso(size).map_err(err)? {
            posets += 1;
            let n = p.len();
            let r = p.rank();
            let hp = hp_ideal(&p, DEFAULT_POSET_IDEAL_CAP).map_err(err)?;
            let profile = oracle.depth_profile(&hp, r + 2).map_err(err)?;
            let mut last = 0;
            for k in 1..=r + 2 {
                let dl = delta(&p, k, DEFAULT_DELTA_CAP).map_err(err)?.value;
                let predicted = 2 * n - dl - 1;
                ensure(profile.at(k) == predicted, || {
                    format!("{:?} k={k}: oracle {}, 2n - delta - 1 = {predicted}", p.covers(), profile.at(k))
                })?;
                if k <= r + 1 {
                    ensure(dl > last, || format!("{:?}: delta not increasing at k={k}", p.covers()))?;
                }
                if k > r {
                    ensure(dl == n, || format!("{:?}: delta({k}) = {dl}, expected {n}", p.covers()))?;
                }
                last = dl;
                checks += 1;
            }
            ensure(profile.at(r + 2) == n - 1, || format!("{:?}: tail depth {}", p.covers(), profile.at(r + 2)))?;
        }
    }
    Ok(format!("{posets} posets, {checks} (P, k) pairs"))
}

fn c6_increasing() -> Outcome {
    let oracle = Oracle::default();
    let mut done = Vec::new();
    for values in [vec![0, 1, 2], vec![1, 2]] {
        let spec = DepthFunctionSpec::increasing(values.clone());
        let ideal = ideal_for_increasing_f(&spec).map_err(err)?;
        let kmax = values.len() + 2;
        let profile = oracle.depth_profile(&ideal, kmax).map_err(err)?;
        let want = spec.profile(kmax);
        ensure(profile.values == want, || format!("f = {values:?}: oracle {:?}, f {want:?}", profile.values))?;
        done.push(format!("{want:?}"));
    }
    Ok(done.join(", "))
}

fn c7_nonmonotone() -> Outcome {
    let profile = Oracle::default().depth_profile(&nonmonotone_example(), 5).map_err(err)?;
    ensure(profile.values == NONMONOTONE_PROFILE, || {
        format!("oracle {:?}, expected {NONMONOTONE_PROFILE:?}", profile.values)
    })?;
    Ok(format!("profile {:?}", profile.values))
}

fn c8_property_suites() -> Outcome {
    let report = run_sweep(&SweepConfig::default()).map_err(err)?;
    let total = report.total_instances();
    ensure(total >= 100, || format!("only {total} instances checked"))?;
    let violations: Vec<String> = report
        .suites
        .iter()
        .flat_map(|s| s.violations.iter().map(move |v| format!("{}: {} ({})", s.name, v.instance, v.detail)))
        .collect();
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("{total} instances over {} suites, 0 violations", report.suites.len()))
}

fn c9_x_condition_orders() -> Outcome {
    let mut instances = vec![("worked".to_string(), worked_ideal()?)];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seeded = 0;
    for attempt in 0..200 {
        if seeded >= 3 {
            break;
        }
        let n = rng.gen_range(4..=6);
        let Some(g) = random_chordal_complement(&mut rng, n) else { continue };
        let ideal = edge_ideal(&g).map_err(err)?;
        let (_, gb) = rees_groebner(&ideal, &ReesConfig::default()).map_err(err)?;
        if x_condition(&gb) {
            instances.push((format!("seeded graph {attempt} on {n} vertices"), ideal));
            seeded += 1;
        }
    }
    ensure(seeded >= 3, || format!("only {seeded} seeded graphs satisfy the x-condition"))?;
    for (name, ideal) in &instances {
        let (ring, gb) = rees_groebner(ideal, &ReesConfig::default()).map_err(err)?;
        ensure(x_condition(&gb), || format!("{name}: x-condition fails"))?;
        for k in 1..=3u32 {
            let order = thm25_generator_order(ideal, k, &ring, &gb).map_err(err)?;
            let power = ideal.power(k).map_err(err)?;
            let cert = verify_linear_quotients(&power, &order).map_err(err)?;
            ensure(cert.valid, || format!("{name}, k={k}: order lacks linear quotients"))?;
        }
    }
    Ok(format!("{} instances x k = 1..3", instances.len()))
}

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let minutes = |m: u64| Some(Duration::from_secs(60 * m));
    let criteria = [
        Criterion { number: 1, name: "edge ideal depth profile", budget: minutes(1), run: c1_worked_profile },
        Criterion { number: 2, name: "Rees Groebner golden", budget: minutes(2), run: c2_worked_basis },
        Criterion { number: 3, name: "squarefree Veronese powers", budget: minutes(10), run: c3_squarefree_veronese },
        Criterion { number: 4, name: "Veronese type depth", budget: None, run: c4_veronese_type },
        Criterion { number: 5, name: "poset ideals and delta", budget: minutes(15), run: c5_posets },
        Criterion { number: 6, name: "increasing depth functions", budget: None, run: c6_increasing },
        Criterion { number: 7, name: "nonmonotone depth function", budget: minutes(10), run: c7_nonmonotone },
        Criterion { number: 8, name: "property suites", budget: None, run: c8_property_suites },
        Criterion { number: 9, name: "x-condition generator orders", budget: None, run: c9_x_condition_orders },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.1?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {} ({}): PASS [{detail}; {elapsed:.1?}]", c.number, c.name),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({}): FAIL [{detail}; {elapsed:.1?}]", c.number, c.name);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
