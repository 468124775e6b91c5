use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};
use crate::resolution::{rank_rational, DepthProfile};

use super::groebner::{buchberger, Binomial, GroebnerBasis, DEFAULT_BUCHBERGER_CAP};
use super::order::{TermOrder, YOrder};

/// Cap on the number of y-monomials enumerated per degree for the ρ bounds.
pub const DEFAULT_BOUNDS_CAP: usize = 2_000_000;

/// Variables of `K[y_u : u ∈ G(I)][x_1..x_n]`, laid out as `y_1..y_m x_1..x_n`.
///
/// `y_j` maps to the `j`-th generator of `I` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesRing {
    x: Arc<VariableSet>,
    gens: Vec<Monomial>,
    y_names: Vec<String>,
}

impl ReesRing {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let x = ideal.vars().clone();
        let m = ideal.num_gens();
        let prefix = ["y", "Y", "w", "z", "u"]
            .into_iter()
            .find(|p| (1..=m).all(|j| x.index_of(&format!("{p}{j}")).is_none()))
            .ok_or_else(|| Error::Unsupported("no free prefix for the y-variables".into()))?;
        let y_names = (1..=m).map(|j| format!("{prefix}{j}")).collect();
        Ok(ReesRing {
            x,
            gens: ideal.gens().to_vec(),
            y_names,
        })
    }

    pub fn x_vars(&self) -> &Arc<VariableSet> {
        &self.x
    }

    /// `gens()[j]` is the image of `y_{j+1}`.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_y(&self) -> usize {
        self.gens.len()
    }

    pub fn num_x(&self) -> usize {
        self.x.len()
    }

    pub fn y_name(&self, j: usize) -> &str {
        &self.y_names[j]
    }

    /// Block order for this ring with `<#` given by `y_order` over `priority`.
    pub fn order(&self, y_order: YOrder, priority: Option<Vec<usize>>) -> Result<TermOrder> {
        let o = TermOrder::new(self.num_y(), self.num_x(), y_order);
        match priority {
            Some(p) => o.with_y_priority(p),
            None => Ok(o),
        }
    }

    /// Monomial `x^b y^a` in ring layout.
    pub fn monomial(&self, y: &[u32], x: &[u32]) -> Monomial {
        Monomial::new([y, x].concat())
    }

    /// `π(x^b y^a) = x^(b + Σ a_j u_j)`, together with the `t`-degree `|a|`.
    pub fn image(&self, m: &Monomial) -> Result<(Monomial, u64)> {
        let (y, x) = m.exponents().split_at(self.num_y());
        let mut acc = Monomial::new(x.to_vec());
        let mut tdeg = 0u64;
        for (g, &e) in self.gens.iter().zip(y) {
            if e > 0 {
                acc = acc.checked_mul(&g.checked_pow(e)?)?;
                tdeg += e as u64;
            }
        }
        Ok((acc, tdeg))
    }

    /// Renders a ring monomial with the x-factors first, e.g. `x5 y1`.
    pub fn display_monomial(&self, m: &Monomial) -> String {
        let (y, x) = m.exponents().split_at(self.num_y());
        let mut parts = Vec::new();
        let named = self
            .x
            .names()
            .iter()
            .zip(x)
            .chain(self.y_names.iter().zip(y));
        for (name, &e) in named {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Order and cap settings for Rees Gröbner computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesConfig {
    pub y_order: YOrder,
    /// Greatest-first permutation of the y-variables; identity when `None`.
    pub y_priority: Option<Vec<usize>>,
    pub cap: usize,
}

impl Default for ReesConfig {
    fn default() -> Self {
        ReesConfig {
            y_order: YOrder::default(),
            y_priority: None,
            cap: DEFAULT_BUCHBERGER_CAP,
        }
    }
}

/// Generators of `ker π` by eliminating `t` from `(y_u - u t)`.
///
/// Output binomials are t-free, in ring layout, oriented by `order`.
pub fn rees_kernel(ring: &ReesRing, order: &TermOrder, cap: usize) -> Result<Vec<Binomial>> {
    let elim = order.eliminating_t();
    let (m, n) = (ring.num_y(), ring.num_x());
    let gens: Vec<Binomial> = ring
        .gens()
        .iter()
        .enumerate()
        .map(|(j, u)| {
            let mut y = vec![0u32; 1 + m + n];
            y[1 + j] = 1;
            let mut ut = vec![1u32];
            ut.extend(std::iter::repeat_n(0, m));
            ut.extend_from_slice(u.exponents());
            Binomial::new(Monomial::new(y), Monomial::new(ut), &elim).expect("distinct terms")
        })
        .collect();
    let gb = buchberger(gens, &elim, cap)?;
    let strip = |a: &Monomial| Monomial::new(a.exponents()[1..].to_vec());
    Ok(gb
        .elements()
        .iter()
        .filter(|g| g.lead().exp(0) == 0 && g.trail().exp(0) == 0)
        .map(|g| Binomial::new(strip(g.lead()), strip(g.trail()), order).expect("distinct terms"))
        .collect())
}

/// Rees ring of `ideal` and the reduced Gröbner basis of its toric ideal.
pub fn rees_groebner(ideal: &MonomialIdeal, cfg: &ReesConfig) -> Result<(ReesRing, GroebnerBasis)> {
    let ring = ReesRing::new(ideal)?;
    let order = ring.order(cfg.y_order, cfg.y_priority.clone())?;
    let kernel = rees_kernel(&ring, &order, cfg.cap)?;
    let gb = buchberger(kernel, &order, cfg.cap)?;
    Ok((ring, gb))
}

fn x_degree(gb: &GroebnerBasis, m: &Monomial) -> u64 {
    gb.order().x_part(m).iter().map(|&e| e as u64).sum()
}

/// Every basis element has x-degree at most one in both terms.
pub fn x_condition(gb: &GroebnerBasis) -> bool {
    gb.elements()
        .iter()
        .all(|g| g.terms().iter().all(|t| x_degree(gb, t) <= 1))
}

/// `ρ(a) = #{i : x_i y^a ∈ in(J)}`.
pub fn rho(gb: &GroebnerBasis, a: &[u32]) -> usize {
    let o = gb.order();
    let n = o.num_x();
    (0..n)
        .filter(|&i| {
            let mut x = vec![0u32; n];
            x[i] = 1;
            gb.in_initial_ideal(&Monomial::new([a, &x[..]].concat()))
        })
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundAtK {
    pub k: usize,
    /// `max ρ(a)` over all `|a| = k`, with a maximizer.
    pub max_rho: usize,
    pub witness: Vec<u32>,
    /// `max ρ(a)` over standard `y^a` with `|a| = k`.
    pub max_rho_standard: usize,
    /// `n - max_rho - 1`, floored at 0.
    pub bound: usize,
    /// `n - max_rho_standard - 1`, floored at 0; equals `depth S/I^k` for
    /// equigenerated `I` with the x-condition.
    pub standard_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitBound {
    /// lcm of the y-parts of the x-containing initial generators.
    pub c: Vec<u32>,
    pub rho: usize,
    /// `n - ρ(c) - 1`, floored at 0.
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthBounds {
    pub per_k: Vec<BoundAtK>,
    pub limit: LimitBound,
}

fn floor_bound(n: usize, rho: usize) -> usize {
    n.saturating_sub(rho + 1)
}

/// Lower bounds `depth S/I^k ≥ n - max ρ(a) - 1` for `k = 1..=kmax` and the limit bound.
pub fn depth_lower_bounds(gb: &GroebnerBasis, kmax: usize, cap: usize) -> Result<DepthBounds> {
    if !x_condition(gb) {
        return Err(Error::Unsupported("the basis does not satisfy the x-condition".into()));
    }
    let o = gb.order();
    let (m, n) = (o.num_y(), o.num_x());
    let zero_x = vec![0u32; n];
    let mut per_k = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut best: Option<(usize, Vec<u32>)> = None;
        let mut best_std = 0usize;
        let mut seen = 0usize;
        let mut overflow = false;
        for_each_composition(m, k as u32, &mut |a| {
            seen += 1;
            if seen > cap {
                overflow = true;
                return false;
            }
            let r = rho(gb, a);
            if best.as_ref().is_none_or(|(b, _)| r > *b) {
                best = Some((r, a.to_vec()));
            }
            if r > best_std && !gb.in_initial_ideal(&Monomial::new([a, &zero_x[..]].concat())) {
                best_std = r;
            }
            true
        });
        if overflow {
            return Err(Error::limit("bounds", cap).with_context(format!("k={k}")));
        }
        let (max_rho, witness) = best.unwrap_or((0, vec![0; m]));
        per_k.push(BoundAtK {
            k,
            max_rho,
            witness,
            max_rho_standard: best_std,
            bound: floor_bound(n, max_rho),
            standard_bound: floor_bound(n, best_std),
        });
    }
    let mut c = vec![0u32; m];
    for l in gb.leads().filter(|l| x_degree(gb, l) > 0) {
        for (cj, &e) in c.iter_mut().zip(o.y_part(l)) {
            *cj = (*cj).max(e);
        }
    }
    let r = rho(gb, &c);
    Ok(DepthBounds {
        per_k,
        limit: LimitBound {
            c,
            rho: r,
            bound: floor_bound(n, r),
        },
    })
}

/// Calls `f` on every `a ∈ N^m` with `|a| = k`; stops early when `f` returns false.
fn for_each_composition(m: usize, k: u32, f: &mut dyn FnMut(&[u32]) -> bool) {
    fn rec(a: &mut Vec<u32>, pos: usize, left: u32, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if pos + 1 == a.len() {
            a[pos] = left;
            let go = f(a);
            a[pos] = 0;
            return go;
        }
        for e in (0..=left).rev() {
            a[pos] = e;
            if !rec(a, pos + 1, left - e, f) {
                a[pos] = 0;
                return false;
            }
        }
        a[pos] = 0;
        true
    }
    if m == 0 {
        if k == 0 {
            f(&[]);
        }
        return;
    }
    let mut a = vec![0u32; m];
    rec(&mut a, 0, k, f);
}

/// `G(I^k)` sorted by `<#` on the standard expressions of its elements.
///
/// Each `w` is factored as a product of `k` generators, the factorization is
/// reduced to its normal form modulo the toric ideal, and the generators are
/// sorted by these standard monomials.
pub fn thm25_generator_order(
    ideal: &MonomialIdeal,
    k: u32,
    ring: &ReesRing,
    gb: &GroebnerBasis,
) -> Result<Vec<Monomial>> {
    if ring.gens() != ideal.gens() {
        return Err(Error::AmbientMismatch);
    }
    if k == 0 {
        return Err(Error::InvalidSpec("k must be at least 1".into()));
    }
    let power = ideal.power(k)?;
    let (m, n) = (ring.num_y(), ring.num_x());
    // first factorization reached for each product of k generators
    let mut level: HashMap<Monomial, Vec<u32>> = HashMap::new();
    level.insert(Monomial::one(n), vec![0; m]);
    for _ in 0..k {
        let mut next: HashMap<Monomial, Vec<u32>> = HashMap::new();
        let mut items: Vec<_> = level.into_iter().collect();
        items.sort_by(|a, b| a.1.cmp(&b.1).reverse());
        for (w, a) in items {
            for (j, g) in ring.gens().iter().enumerate() {
                let wg = w.checked_mul(g)?;
                next.entry(wg).or_insert_with(|| {
                    let mut b = a.clone();
                    b[j] += 1;
                    b
                });
            }
        }
        level = next;
    }
    let zero_x = vec![0u32; n];
    let mut keyed = Vec::with_capacity(power.num_gens());
    for w in power.gens() {
        let a = level
            .get(w)
            .ok_or_else(|| Error::Internal("generator of I^k without factorization".into()))?;
        let std = gb.normal_form(&ring.monomial(a, &zero_x))?;
        let (img, tdeg) = ring.image(&std)?;
        if &img != w || tdeg != k as u64 || gb.order().x_part(&std).iter().any(|&e| e > 0) {
            return Err(Error::Internal("no standard expression found".into()));
        }
        keyed.push((gb.order().y_part(&std).to_vec(), w.clone()));
    }
    keyed.sort_by(|a, b| gb.order().cmp_y(&a.0, &b.0));
    Ok(keyed.into_iter().map(|(_, w)| w).collect())
}

/// `ℓ(I)` for equigenerated `I`: rank of the exponent matrix of `G(I)`.
pub fn analytic_spread(ideal: &MonomialIdeal) -> Result<usize> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if !ideal.is_equigenerated() {
        return Err(Error::Unsupported("analytic spread needs generators of one degree".into()));
    }
    let rows: Vec<Vec<i64>> = ideal
        .gens()
        .iter()
        .map(|g| g.exponents().iter().map(|&e| e as i64).collect())
        .collect();
    Ok(rank_rational(&rows))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurchBrodmannReport {
    pub analytic_spread: usize,
    /// `n - ℓ(I)`.
    pub bound: usize,
    pub min_depth: usize,
    /// Last computed depth.
    pub tail: usize,
    pub min_ok: bool,
    pub tail_ok: bool,
}

impl BurchBrodmannReport {
    pub fn holds(&self) -> bool {
        self.min_ok && self.tail_ok
    }
}

/// Checks `min_k depth S/I^k ≤ n - ℓ(I)` and the observed tail against the same value.
pub fn burch_brodmann_check(ideal: &MonomialIdeal, profile: &DepthProfile) -> Result<BurchBrodmannReport> {
    let spread = analytic_spread(ideal)?;
    let min_depth = profile
        .min()
        .ok_or_else(|| Error::InvalidSpec("empty depth profile".into()))?;
    let tail = *profile.values.last().expect("nonempty");
    let bound = ideal.nvars() - spread;
    Ok(BurchBrodmannReport {
        analytic_spread: spread,
        bound,
        min_depth,
        tail,
        min_ok: min_depth <= bound,
        tail_ok: tail <= bound,
    })
}

/// Text form: header with all variables, the y-legend, the order, then
/// one `lead - trail` line per element.
pub fn write_groebner(ring: &ReesRing, gb: &GroebnerBasis) -> String {
    let mut out = String::from("vars:");
    for name in ring.x.names().iter().chain(&ring.y_names) {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (j, g) in ring.gens().iter().enumerate() {
        out.push_str(&format!("{} = {}\n", ring.y_name(j), g.display(&ring.x)));
    }
    let o = gb.order();
    let prio: Vec<&str> = o.y_priority().iter().map(|&j| ring.y_name(j)).collect();
    let kind = match o.y_order() {
        YOrder::Lex => "lex",
        YOrder::DegRevLex => "degrevlex",
    };
    out.push_str(&format!("order: y-{kind} {} then x-lex\n", prio.join(" > ")));
    for b in gb.elements() {
        out.push_str(&format!(
            "{} - {}\n",
            ring.display_monomial(b.lead()),
            ring.display_monomial(b.trail())
        ));
    }
    out
}
