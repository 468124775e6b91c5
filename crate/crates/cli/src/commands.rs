//! Command implementations. Each returns an [`Outcome`] or an error message.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use depthlab::constructions::{
    delta, edge_ideal, hp_ideal, hp_power_order, ideal_for_decreasing_f, ideal_for_increasing_f, is_chordal,
    nonmonotone_example, parse_graph, parse_poset, predicted_depth_hp, predicted_depth_veronese,
    predicted_squarefree_veronese_profile, squarefree_veronese, veronese_type, DepthFunctionSpec, Poset,
    Prediction, VeroneseSpec, NONMONOTONE_PROFILE,
};
use depthlab::linquot::{
    depth_by_linear_quotients, find_linear_quotients_order, revlex_order, verify_linear_quotients,
    QuotientCertificate,
};
use depthlab::sweep::{run_suite, run_sweep, SweepConfig, SweepReport, DEFAULT_INSTANCES, SUITES};
use depthlab::text::{parse_ideal, parse_monomial_list, write_ideal};
use depthlab::toric::{
    burch_brodmann_check, depth_lower_bounds, rees_groebner, write_groebner, x_condition, ReesConfig, YOrder,
};
use depthlab::MonomialIdeal;

use crate::config::RunConfig;
use crate::report::{InputDigest, Outcome, Relation, Row};

pub type CmdResult = Result<(), String>;

const ORACLE: &str = "oracle";

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Depth profile `depth S/I^k` for k = 1..kmax.
    Depth {
        /// Ideal file.
        ideal: PathBuf,
        /// Expected profile, e.g. `0,1,0,2,2`; adds one comparison row per k.
        #[arg(long, value_delimiter = ',')]
        expect: Vec<usize>,
    },
    /// Graded and multigraded Betti numbers of `I^power`.
    Betti {
        ideal: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Linear-quotients certificate and the depth formula `n - q - 1`.
    Linquot {
        /// Ideal file; omit when `--poset` is given.
        ideal: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OrderKind::Search)]
        order: OrderKind,
        /// Ordering file for `--order file`.
        #[arg(long)]
        ordering: Option<PathBuf>,
        /// Use `H_P` of this poset file as the ideal.
        #[arg(long)]
        poset: Option<PathBuf>,
        /// Work with the power `I^power`.
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Skip the oracle comparison.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Rees-algebra Groebner basis, x-condition and rho bounds.
    Toric {
        ideal: PathBuf,
        /// Report the depth lower bounds for k = 1..kmax and the limit bound.
        #[arg(long)]
        bounds: bool,
        /// Accepted for clarity; the verdict is always reported.
        #[arg(long)]
        x_condition: bool,
        /// Order on the y-block: `lex` or `revlex`.
        #[arg(long, default_value = "revlex", value_parser = parse_y_order)]
        y_order: YOrder,
        /// Greatest-first y-variables, 1-based, e.g. `3,1,2`.
        #[arg(long, value_delimiter = ',')]
        y_priority: Vec<usize>,
    },
    /// Build an ideal from a family and write it with a prediction sidecar.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<u32>,
        /// Exponent bounds for `veronese`.
        #[arg(long, value_delimiter = ',')]
        bounds: Vec<u32>,
        /// Graph file for `edge`.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Poset file for `poset`.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Depth function values f(1), f(2), ...
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        /// f(0) for `decreasing`.
        #[arg(long)]
        f0: Option<usize>,
        /// Ideal output path; the sidecar goes to `<out>.prediction.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare the prediction with the oracle for k = 1..kmax.
        #[arg(long)]
        verify: bool,
    },
    /// Seeded property suites.
    Sweep {
        #[arg(long, default_value_t = DEFAULT_INSTANCES)]
        instances: usize,
        /// Run only these suites.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
}

fn parse_y_order(s: &str) -> Result<YOrder, String> {
    s.parse::<YOrder>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderKind {
    /// Generators sorted by reverse lexicographic order, greatest first.
    Revlex,
    /// Backtracking search over orderings.
    Search,
    /// The constructed order on powers of `H_P`.
    Hp,
    /// Ordering read from `--ordering`.
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    SqfreeVeronese,
    Veronese,
    Edge,
    Poset,
    Decreasing,
    #[value(alias = "increasing")]
    Staircase,
    Nonmonotone,
}

fn lib_err(context: &str) -> impl Fn(depthlab::Error) -> String + '_ {
    move |e| format!("{context}: {e}")
}

fn read_input(path: &Path, out: &mut Outcome) -> Result<String, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    out.inputs.push(InputDigest::of(path.display().to_string(), &bytes));
    String::from_utf8(bytes).map_err(|_| format!("{}: not valid UTF-8", path.display()))
}

fn load_ideal(path: &Path, out: &mut Outcome) -> Result<MonomialIdeal, String> {
    let text = read_input(path, out)?;
    parse_ideal(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_poset(path: &Path, out: &mut Outcome) -> Result<Poset, String> {
    let text = read_input(path, out)?;
    parse_poset(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn join(values: &[usize]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn profile_table(values: &[usize]) -> String {
    let mut s = String::from("   k  depth S/I^k\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(s, "{:>4}  {v}", i + 1);
    }
    s
}

/// Runs `cmd`, filling `out`; on error `out` keeps what was gathered so far.
pub fn execute(cmd: &Command, cfg: &RunConfig, out: &mut Outcome) -> CmdResult {
    match cmd {
        Command::Depth { ideal, expect } => depth(ideal, expect, cfg, out),
        Command::Betti { ideal, power } => betti(ideal, *power, cfg, out),
        Command::Linquot {
            ideal,
            order,
            ordering,
            poset,
            power,
            no_oracle,
        } => linquot(
            LinquotArgs {
                ideal: ideal.as_deref(),
                order: *order,
                ordering: ordering.as_deref(),
                poset: poset.as_deref(),
                power: *power,
                oracle: !no_oracle,
            },
            cfg,
            out,
        ),
        Command::Toric {
            ideal,
            bounds,
            x_condition: _,
            y_order,
            y_priority,
        } => toric(ideal, *bounds, *y_order, y_priority, cfg, out),
        Command::Construct {
            family,
            n,
            d,
            bounds,
            graph,
            file,
            f,
            f0,
            out: out_path,
            verify,
        } => construct(
            ConstructArgs {
                family: *family,
                n: *n,
                d: *d,
                bounds,
                graph: graph.as_deref(),
                file: file.as_deref(),
                f,
                f0: *f0,
                out: out_path.as_deref(),
                verify: *verify,
            },
            cfg,
            out,
        ),
        Command::Sweep { instances, suite } => sweep(*instances, suite, cfg, out),
    }
}

fn depth(path: &Path, expect: &[usize], cfg: &RunConfig, out: &mut Outcome) -> CmdResult {
    let ideal = load_ideal(path, out)?;
    let profile = cfg
        .oracle()
        .depth_profile(&ideal, cfg.kmax)
        .map_err(lib_err("depth profile"))?;
    out.result("nvars", ideal.nvars());
    out.result("num_gens", ideal.num_gens());
    out.result("profile", &profile.values);
    out.result("stable_tail", profile.stable_tail);
    out.section("depth profile", profile_table(&profile.values));
    match profile.stable_tail {
        Some((k0, v)) => out.note(format!(
            "profile is constant ({v}) from k = {k0} through k = {} (observational)",
            cfg.kmax
        )),
        None => out.note(format!("profile is not yet constant at k = {}", cfg.kmax)),
    }
    if ideal.is_equigenerated() {
        let bb = burch_brodmann_check(&ideal, &profile).map_err(lib_err("analytic spread"))?;
        out.result("analytic_spread", bb.analytic_spread);
        out.rows.push(Row::compare(
            "min depth over k <= kmax",
            bb.min_depth,
            ORACLE,
            Relation::Le,
            bb.bound,
            "n - analytic spread",
        ));
    }
    for (k, &want) in expect.iter().enumerate().take(cfg.kmax) {
        out.rows.push(Row::compare(
            format!("depth S/I^{}", k + 1),
            profile.at(k + 1),
            ORACLE,
            Relation::Eq,
            want,
            "--expect",
        ));
    }
    if expect.len() > cfg.kmax {
        out.note(format!(
            "--expect lists {} values; only k <= kmax = {} were compared",
            expect.len(),
            cfg.kmax
        ));
    }
    Ok(())
}

fn betti(path: &Path, power: u32, cfg: &RunConfig, out: &mut Outcome) -> CmdResult {
    let ideal = load_ideal(path, out)?;
    let ideal = ideal.power(power).map_err(lib_err("power"))?;
    let table = cfg.oracle().betti_table(&ideal).map_err(lib_err("betti table"))?;
    let pd = table.projdim().unwrap_or(0);
    let depth = ideal.nvars() - pd - 1;
    out.result("power", power);
    out.result("betti", table.document());
    out.result("depth", depth);
    out.section(&format!("betti table of I^{power}"), table.text_report());
    out.note(format!("projdim S/I^{power} = {}, depth = {depth}", pd + 1));
    Ok(())
}

struct LinquotArgs<'a> {
    ideal: Option<&'a Path>,
    order: OrderKind,
    ordering: Option<&'a Path>,
    poset: Option<&'a Path>,
    power: u32,
    oracle: bool,
}

fn linquot(a: LinquotArgs, cfg: &RunConfig, out: &mut Outcome) -> CmdResult {
    let (base, poset) = match (a.ideal, a.poset) {
        (Some(_), Some(_)) => return Err("give either an ideal file or --poset, not both".into()),
        (None, None) => return Err("an ideal file or --poset is required".into()),
        (Some(p), None) => (load_ideal(p, out)?, None),
        (None, Some(p)) => {
            let poset = load_poset(p, out)?;
            let hp = hp_ideal(&poset, cfg.caps.poset_ideals).map_err(lib_err("H_P"))?;
            (hp, Some(poset))
        }
    };
    if a.power == 0 {
        return Err("--power must be at least 1".into());
    }
    let ideal = base.power(a.power).map_err(lib_err("power"))?;
    let n = ideal.nvars();
    out.result("power", a.power);
    out.result("num_gens", ideal.num_gens());
    let source = match a.order {
        OrderKind::Revlex => "revlex order",
        OrderKind::Search => "search",
        OrderKind::Hp => "H_P power order",
        OrderKind::File => "ordering file",
    };
    let cert: Option<QuotientCertificate> = match a.order {
        OrderKind::Revlex => {
            let ord = revlex_order(&ideal).map_err(lib_err("revlex order"))?;
            Some(verify_linear_quotients(&ideal, &ord).map_err(lib_err("verification"))?)
        }
        OrderKind::Search => {
            find_linear_quotients_order(&ideal, cfg.caps.search).map_err(lib_err("order search"))?
        }
        OrderKind::Hp => {
            let p = poset.as_ref().ok_or("--order hp needs --poset")?;
            let ord = hp_power_order(p, a.power, cfg.caps.delta).map_err(lib_err("H_P order"))?;
            Some(verify_linear_quotients(&ideal, &ord).map_err(lib_err("verification"))?)
        }
        OrderKind::File => {
            let path = a.ordering.ok_or("--order file needs --ordering")?;
            let text = read_input(path, out)?;
            let (vars, list) = parse_monomial_list(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            if vars.names() != ideal.vars().names() {
                return Err(format!("{}: variables differ from the ideal's", path.display()));
            }
            Some(verify_linear_quotients(&ideal, &list).map_err(lib_err("verification"))?)
        }
    };
    let Some(cert) = cert else {
        out.result("certificate", serde_json::Value::Null);
        out.section("result", "no linear quotients order\n");
        out.note("the search exhausted all orderings");
        return Ok(());
    };
    out.result("certificate", cert.document(ideal.vars()));
    out.section("certificate", cert.text_report(ideal.vars()));
    if !cert.valid {
        let violations: Vec<String> = cert
            .steps
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.linear)
            .map(|(j, s)| {
                let colon: Vec<String> = s.colon.iter().map(|c| c.display(ideal.vars()).to_string()).collect();
                format!("position {}: colon ({})", j + 2, colon.join(", "))
            })
            .collect();
        out.result("violations", &violations);
        out.rows.push(Row::verdict(
            "linear quotients",
            format!("colon violation at {}", violations[0]),
            "verification",
            "variable-generated colons",
            source,
            false,
        ));
        return Ok(());
    }
    let formula = depth_by_linear_quotients(&cert, n).map_err(lib_err("depth formula"))?;
    out.result("q", cert.q);
    out.result("formula_depth", formula);
    if let Some(p) = &poset {
        let d = delta(p, a.power as usize, cfg.caps.delta).map_err(lib_err("delta"))?;
        out.result("delta", &d);
        out.rows.push(Row::compare("q", cert.q, source, Relation::Eq, d.value, "delta(P;k)"));
    }
    if a.oracle {
        let depth = cfg.oracle().depth(&ideal).map_err(lib_err("oracle"))?;
        out.result("oracle_depth", depth);
        out.rows.push(Row::compare("depth", depth, ORACLE, Relation::Eq, formula, "n - q - 1"));
        if let Some(p) = &poset {
            let pred = predicted_depth_hp(p, a.power as usize, cfg.caps.delta).map_err(lib_err("delta"))?;
            out.rows.push(Row::compare("depth", depth, ORACLE, Relation::Eq, pred, "2n - delta(P;k) - 1"));
        }
    }
    Ok(())
}

fn toric(
    path: &Path,
    bounds: bool,
    y_order: YOrder,
    y_priority: &[usize],
    cfg: &RunConfig,
    out: &mut Outcome,
) -> CmdResult {
    let ideal = load_ideal(path, out)?;
    let priority = if y_priority.is_empty() {
        None
    } else {
        if y_priority.contains(&0) {
            return Err("--y-priority is 1-based".into());
        }
        Some(y_priority.iter().map(|j| j - 1).collect())
    };
    let rc = ReesConfig {
        y_order,
        y_priority: priority,
        cap: cfg.caps.buchberger,
    };
    let (ring, gb) = rees_groebner(&ideal, &rc).map_err(lib_err("Rees Groebner basis"))?;
    let text = write_groebner(&ring, &gb);
    let leads: Vec<String> = gb.leads().map(|m| ring.display_monomial(m)).collect();
    let xc = x_condition(&gb);
    out.result("kernel_size", gb.len());
    out.result("basis", text.lines().collect::<Vec<_>>());
    out.result("initial_ideal", &leads);
    out.result("x_condition", xc);
    out.section("reduced Groebner basis", text);
    out.section("initial ideal", format!("{}\n", leads.join(", ")));
    out.section("x-condition", format!("{xc}\n"));
    if gb.is_empty() {
        out.note("the kernel is zero; the x-condition holds vacuously");
    }
    if bounds {
        if !xc {
            out.note("the x-condition fails, so the rho bounds do not apply");
            return Ok(());
        }
        let b = depth_lower_bounds(&gb, cfg.kmax, cfg.caps.bounds).map_err(lib_err("bounds"))?;
        let profile = cfg
            .oracle()
            .depth_profile(&ideal, cfg.kmax)
            .map_err(lib_err("depth profile"))?;
        let mut s = String::from("   k  max rho  bound  standard bound  oracle\n");
        for bk in &b.per_k {
            let _ = writeln!(
                s,
                "{:>4}  {:>7}  {:>5}  {:>14}  {:>6}",
                bk.k,
                bk.max_rho,
                bk.bound,
                bk.standard_bound,
                profile.at(bk.k)
            );
            out.rows.push(Row::compare(
                format!("depth S/I^{}", bk.k),
                profile.at(bk.k),
                ORACLE,
                Relation::Ge,
                bk.bound,
                "n - max rho(a) - 1",
            ));
        }
        let _ = writeln!(s, "limit bound {} (rho(c) = {})", b.limit.bound, b.limit.rho);
        out.section("depth lower bounds", s);
        out.note(format!(
            "the limit bound {} applies for k >> 0; observed depth at k = {} is {} (observational)",
            b.limit.bound,
            cfg.kmax,
            profile.at(cfg.kmax)
        ));
        out.result("bounds", &b);
        out.result("profile", &profile.values);
    }
    Ok(())
}

struct ConstructArgs<'a> {
    family: Family,
    n: Option<usize>,
    d: Option<u32>,
    bounds: &'a [u32],
    graph: Option<&'a Path>,
    file: Option<&'a Path>,
    f: &'a [usize],
    f0: Option<usize>,
    out: Option<&'a Path>,
    verify: bool,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("{family} needs {flag}"))
}

fn build(a: &ConstructArgs, cfg: &RunConfig, out: &mut Outcome) -> Result<(MonomialIdeal, Prediction), String> {
    let kmax = cfg.kmax;
    let spec_err = lib_err("invalid specification");
    Ok(match a.family {
        Family::SqfreeVeronese => {
            let n = need(a.n, "--n", "sqfree-veronese")?;
            let d = need(a.d, "--d", "sqfree-veronese")?;
            let i = squarefree_veronese(n, d).map_err(spec_err)?;
            let p = Prediction::new("sqfree-veronese", "depth S/I_{n,d}^k = max{0, n - k(n - d) - 1}")
                .param("n", n)
                .param("d", d)
                .profile(predicted_squarefree_veronese_profile(n, d, kmax));
            (i, p)
        }
        Family::Veronese => {
            let n = need(a.n, "--n", "veronese")?;
            let d = need(a.d, "--d", "veronese")?;
            let spec = VeroneseSpec::new(n, d, a.bounds.to_vec()).map_err(&spec_err)?;
            let i = veronese_type(&spec).map_err(&spec_err)?;
            let pred = predicted_depth_veronese(&spec);
            let mut p = Prediction::new("veronese", "depth S/I = t = d + n - 1 - sum e_i")
                .param("n", n)
                .param("d", d)
                .param("bounds", a.bounds.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                .param("t", pred.t)
                .profile(vec![pred.depth]);
            if pred.clamped {
                p.caveat = Some("t < 0 lies outside the formula's range; the prediction is max(0, t)".into());
            }
            (i, p)
        }
        Family::Edge => {
            let path = a.graph.ok_or("edge needs --graph")?;
            let text = read_input(path, out)?;
            let g = parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let i = edge_ideal(&g).map_err(spec_err)?;
            let chordal = is_chordal(&g.complement()).chordal;
            let mut p = Prediction::new(
                "edge",
                "no closed form; a chordal complement gives linear powers and a non-increasing profile",
            )
            .param("vertices", g.num_vertices())
            .param("edges", g.num_edges())
            .param("complement_chordal", chordal);
            if !chordal {
                p.caveat = Some("the complement is not chordal".into());
            }
            (i, p)
        }
        Family::Poset => {
            let path = a.file.ok_or("poset needs --file")?;
            let poset = load_poset(path, out)?;
            let i = hp_ideal(&poset, cfg.caps.poset_ideals).map_err(&spec_err)?;
            let profile = (1..=kmax)
                .map(|k| predicted_depth_hp(&poset, k, cfg.caps.delta))
                .collect::<Result<Vec<_>, _>>()
                .map_err(lib_err("delta"))?;
            let p = Prediction::new("poset", "depth S/H_P^k = 2n - delta(P;k) - 1")
                .param("elements", poset.len())
                .param("rank", poset.rank())
                .profile(profile);
            (i, p)
        }
        Family::Decreasing => {
            let f0 = need(a.f0, "--f0", "decreasing")?;
            let spec = DepthFunctionSpec::decreasing(f0, a.f.to_vec());
            let (poset, i) = ideal_for_decreasing_f(&spec).map_err(&spec_err)?;
            let layers = spec.layers().map_err(&spec_err)?;
            let p = Prediction::new("decreasing", "H_P of the ordinal sum with layer sizes f(k-1) - f(k)")
                .param("f0", f0)
                .param("f", join(a.f))
                .param("layers", join(&layers))
                .param("elements", poset.len())
                .profile(spec.profile(kmax));
            (i, p)
        }
        Family::Staircase => {
            let spec = DepthFunctionSpec::increasing(a.f.to_vec());
            let (n, d, c) = spec.increasing_parameters().map_err(&spec_err)?;
            let i = ideal_for_increasing_f(&spec).map_err(&spec_err)?;
            let p = Prediction::new("staircase", "ideal in x1, x2, y1..yn realizing a bounded increasing f")
                .param("f", join(a.f))
                .param("n", n)
                .param("d", d)
                .param("c", join(&c))
                .profile(spec.profile(kmax));
            (i, p)
        }
        Family::Nonmonotone => {
            let i = nonmonotone_example();
            let known = NONMONOTONE_PROFILE.len().min(kmax);
            let mut p = Prediction::new("nonmonotone", "fixed example with depth profile 0, 1, 0, 2, 2")
                .profile(NONMONOTONE_PROFILE[..known].to_vec());
            if kmax > known {
                p.caveat = Some(format!("no prediction beyond k = {}", NONMONOTONE_PROFILE.len()));
            }
            (i, p)
        }
    })
}

fn construct(a: ConstructArgs, cfg: &RunConfig, out: &mut Outcome) -> CmdResult {
    let (ideal, prediction) = build(&a, cfg, out)?;
    let text = write_ideal(&ideal);
    let sidecar = format!(
        "{}\n",
        serde_json::to_string_pretty(&prediction).expect("serializable prediction")
    );
    if let Some(path) = a.out {
        std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
        let side = sidecar_path(path);
        std::fs::write(&side, &sidecar).map_err(|e| format!("{}: {e}", side.display()))?;
        out.result("files", [path.display().to_string(), side.display().to_string()]);
    }
    out.result("ideal", text.lines().collect::<Vec<_>>());
    out.result("prediction", &prediction);
    out.section("ideal", text);
    out.section("prediction", sidecar);
    if let Some(c) = &prediction.caveat {
        out.note(c.clone());
    }
    if a.verify {
        let profile = cfg
            .oracle()
            .depth_profile(&ideal, cfg.kmax)
            .map_err(lib_err("depth profile"))?;
        out.result("profile", &profile.values);
        for (k, &want) in prediction.predicted_profile.iter().enumerate() {
            out.rows.push(Row::compare(
                format!("depth S/I^{}", k + 1),
                profile.at(k + 1),
                ORACLE,
                Relation::Eq,
                want,
                &prediction.formula,
            ));
        }
        if prediction.predicted_profile.is_empty() {
            out.section("depth profile", profile_table(&profile.values));
        }
    }
    Ok(())
}

/// `<out>.prediction.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".prediction.json");
    PathBuf::from(s)
}

fn sweep(instances: usize, suites: &[String], cfg: &RunConfig, out: &mut Outcome) -> CmdResult {
    let sc = SweepConfig {
        seed: cfg.seed,
        instances,
        oracle: cfg.oracle(),
        rees: ReesConfig {
            cap: cfg.caps.buchberger,
            ..ReesConfig::default()
        },
        search_cap: cfg.caps.search,
    };
    let report = if suites.is_empty() {
        run_sweep(&sc).map_err(lib_err("sweep"))?
    } else {
        if let Some(bad) = suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
            return Err(format!("unknown suite `{bad}`; known: {}", SUITES.join(", ")));
        }
        let suites = suites
            .iter()
            .map(|s| run_suite(s, &sc))
            .collect::<Result<Vec<_>, _>>()
            .map_err(lib_err("sweep"))?;
        SweepReport { seed: cfg.seed, suites }
    };
    let mut s = String::from("suite                      checked  skipped  violations\n");
    for suite in &report.suites {
        let tag = if suite.observational { "  (observational)" } else { "" };
        let _ = writeln!(
            s,
            "{:<26} {:>7}  {:>7}  {:>10}{tag}",
            suite.name,
            suite.instances,
            suite.skipped,
            suite.violations.len()
        );
        out.rows.push(Row::compare(
            format!("{} violations", suite.name),
            suite.violations.len(),
            "sweep",
            Relation::Eq,
            0,
            &suite.property,
        ));
        for v in &suite.violations {
            out.note(format!("{}: {}: {}", suite.name, v.instance, v.detail));
        }
    }
    let _ = writeln!(s, "total checked: {}", report.total_instances());
    out.section("property suites", s);
    out.result("sweep", &report);
    Ok(())
}
