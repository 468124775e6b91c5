//! Linear quotients: verification, search, the depth formula `n - q - 1`,
//! and the polymatroid exchange property.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, VariableSet};
use crate::par::{self, Execution};

/// Default cap on backtracking nodes in [`find_linear_quotients_order`].
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// Colon `(u_1, ..., u_{j-1}) : u_j` for one position `j >= 2` of an ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColonStep {
    pub generator: Monomial,
    pub colon: Vec<Monomial>,
    /// Every colon generator is a single variable.
    pub linear: bool,
}

impl ColonStep {
    /// `q_j`: number of minimal generators of the colon.
    pub fn q(&self) -> usize {
        self.colon.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub ordering: Vec<Monomial>,
    /// Steps for positions `2..=s`.
    pub steps: Vec<ColonStep>,
    /// `max q_j`; `0` for a single generator.
    pub q: usize,
    pub valid: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDocument {
    pub ordering: Vec<String>,
    pub q_list: Vec<usize>,
    pub q: usize,
    pub valid: bool,
}

impl QuotientCertificate {
    fn from_sequence(seq: &[Monomial]) -> Result<Self> {
        let steps = colon_steps(seq)?;
        let valid = steps.iter().all(|s| s.linear);
        let q = steps.iter().map(ColonStep::q).max().unwrap_or(0);
        Ok(QuotientCertificate {
            ordering: seq.to_vec(),
            steps,
            q,
            valid,
        })
    }

    pub fn q_list(&self) -> Vec<usize> {
        self.steps.iter().map(ColonStep::q).collect()
    }

    pub fn document(&self, vars: &VariableSet) -> CertificateDocument {
        CertificateDocument {
            ordering: self.ordering.iter().map(|m| m.display(vars).to_string()).collect(),
            q_list: self.q_list(),
            q: self.q,
            valid: self.valid,
        }
    }

    /// One line per generator with its colon ideal and `q_j`.
    pub fn text_report(&self, vars: &VariableSet) -> String {
        let mut out = String::new();
        for (j, g) in self.ordering.iter().enumerate() {
            let _ = write!(out, "{:>4}. {}", j + 1, g.display(vars));
            if j > 0 {
                let step = &self.steps[j - 1];
                let colon: Vec<String> = step.colon.iter().map(|c| c.display(vars).to_string()).collect();
                let _ = write!(out, "  colon ({})  q_{} = {}", colon.join(", "), j + 1, step.q());
                if !step.linear {
                    out.push_str("  NOT LINEAR");
                }
            }
            out.push('\n');
        }
        let _ = writeln!(out, "q = {}  valid = {}", self.q, self.valid);
        out
    }
}

fn colon_steps(seq: &[Monomial]) -> Result<Vec<ColonStep>> {
    let positions: Vec<usize> = (1..seq.len()).collect();
    par::try_map(Execution::default(), &positions, |&j| colon_step(&seq[..j], &seq[j]))
}

/// `(earlier) : u`. Quotients divisible by a variable quotient are dropped
/// before minimalizing, which keeps long linear sequences near `O(j n)`.
fn colon_step(earlier: &[Monomial], u: &Monomial) -> Result<ColonStep> {
    let n = u.nvars();
    if n > 64 {
        let colon = minimalize(earlier.iter().map(|v| v.quotient_by_gcd(u)))?;
        let linear = colon.iter().all(|c| c.degree() == 1);
        return Ok(ColonStep {
            generator: u.clone(),
            colon,
            linear,
        });
    }
    let mut linear_vars = 0u64;
    let mut wide: Vec<(usize, u64)> = Vec::new();
    for (i, v) in earlier.iter().enumerate() {
        if v.nvars() != n {
            return Err(Error::AmbientMismatch);
        }
        let mut deg = 0u64;
        let mut mask = 0u64;
        for (k, (a, b)) in v.exponents().iter().zip(u.exponents()).enumerate() {
            if a > b {
                deg += u64::from(a - b);
                mask |= 1 << k;
            }
        }
        if deg == 1 {
            linear_vars |= mask;
        } else {
            wide.push((i, mask));
        }
    }
    let rest = minimalize(
        wide.into_iter()
            .filter(|&(_, mask)| mask & linear_vars == 0)
            .map(|(i, _)| earlier[i].quotient_by_gcd(u)),
    )?;
    let linear = rest.is_empty();
    let mut colon: Vec<Monomial> = (0..n)
        .filter(|&k| linear_vars & 1 << k != 0)
        .map(|k| Monomial::var(n, k))
        .collect();
    colon.extend(rest);
    colon.sort_by(Monomial::canonical_cmp);
    Ok(ColonStep {
        generator: u.clone(),
        colon,
        linear,
    })
}

fn check_permutation(ideal: &MonomialIdeal, ordering: &[Monomial]) -> Result<()> {
    if ordering.len() != ideal.num_gens() {
        return Err(Error::InvalidOrdering(format!(
            "ordering has {} entries but the ideal has {} minimal generators",
            ordering.len(),
            ideal.num_gens()
        )));
    }
    check_subsequence(ideal, ordering)
}

fn check_subsequence(ideal: &MonomialIdeal, seq: &[Monomial]) -> Result<()> {
    let mut seen = HashSet::new();
    for (pos, u) in seq.iter().enumerate() {
        if u.nvars() != ideal.nvars() {
            return Err(Error::AmbientMismatch);
        }
        if !ideal.is_minimal_generator(u) {
            return Err(Error::InvalidOrdering(format!(
                "entry {} ({}) is not a minimal generator",
                pos + 1,
                u.display(ideal.vars())
            )));
        }
        if !seen.insert(u) {
            return Err(Error::InvalidOrdering(format!(
                "entry {} ({}) is repeated",
                pos + 1,
                u.display(ideal.vars())
            )));
        }
    }
    if let Some(w) = seq.windows(2).position(|w| w[0].degree() > w[1].degree()) {
        return Err(Error::InvalidOrdering(format!(
            "degree decreases at position {}",
            w + 2
        )));
    }
    Ok(())
}

/// Checks whether `ordering` (a permutation of `G(I)`) has linear quotients.
pub fn verify_linear_quotients(
    ideal: &MonomialIdeal,
    ordering: &[Monomial],
) -> Result<QuotientCertificate> {
    check_permutation(ideal, ordering)?;
    QuotientCertificate::from_sequence(ordering)
}

/// `depth S/I = n - q(I) - 1`.
pub fn depth_by_linear_quotients(cert: &QuotientCertificate, n: usize) -> Result<usize> {
    if !cert.valid {
        return Err(Error::InvalidCertificate);
    }
    n.checked_sub(cert.q + 1)
        .ok_or_else(|| Error::Internal(format!("q = {} is not below n = {n}", cert.q)))
}

/// Depth bound `n - q(J) - 1` from a prefix `J` of `G(I)` with linear quotients.
///
/// When `I` is equigenerated with a linear resolution, the lowest linear strand
/// of `J` injects into that of `I`, so `projdim S/J <= projdim S/I` and the
/// returned value bounds `depth S/I` from above. The caller is responsible
/// for the linear-resolution hypothesis.
pub fn partial_depth_bound(ideal: &MonomialIdeal, prefix: &[Monomial]) -> Result<usize> {
    if !ideal.is_equigenerated() {
        return Err(Error::Unsupported("the ideal must be generated in one degree".into()));
    }
    if prefix.is_empty() {
        return Err(Error::InvalidOrdering("empty prefix".into()));
    }
    check_subsequence(ideal, prefix)?;
    let cert = QuotientCertificate::from_sequence(prefix)?;
    if !cert.valid {
        let bad = cert.steps.iter().position(|s| !s.linear).unwrap_or(0) + 2;
        return Err(Error::InvalidOrdering(format!(
            "prefix fails linear quotients at position {bad}"
        )));
    }
    depth_by_linear_quotients(&cert, ideal.nvars())
}

/// Backtracking search for an ordering of `G(I)` with linear quotients.
///
/// At each position only generators of the least remaining degree are
/// candidates; they are tried by fewest colon variables, then canonical order.
/// Returns `Ok(None)` when no ordering exists.
pub fn find_linear_quotients_order(
    ideal: &MonomialIdeal,
    node_cap: usize,
) -> Result<Option<QuotientCertificate>> {
    ideal.require_proper_nonzero()?;
    let gens = ideal.gens();
    let mut search = Search {
        gens,
        failed: HashSet::new(),
        nodes: 0,
        cap: node_cap,
    };
    let mut chosen = Vec::with_capacity(gens.len());
    let mut used = vec![false; gens.len()];
    if search.extend(&mut chosen, &mut used)? {
        let ordering: Vec<Monomial> = chosen.iter().map(|&i| gens[i].clone()).collect();
        let cert = QuotientCertificate::from_sequence(&ordering)?;
        debug_assert!(cert.valid);
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    gens: &'a [Monomial],
    failed: HashSet<Vec<bool>>,
    nodes: usize,
    cap: usize,
}

impl Search<'_> {
    fn extend(&mut self, chosen: &mut Vec<usize>, used: &mut Vec<bool>) -> Result<bool> {
        if chosen.len() == self.gens.len() {
            return Ok(true);
        }
        // feasibility of the rest depends only on the set already placed
        if self.failed.contains(used) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::limit("search", self.cap));
        }
        let min_deg = (0..self.gens.len())
            .filter(|&i| !used[i])
            .map(|i| self.gens[i].degree())
            .min()
            .expect("some generator is unused");
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for i in (0..self.gens.len()).filter(|&i| !used[i] && self.gens[i].degree() == min_deg) {
            let u = &self.gens[i];
            let colon = minimalize(chosen.iter().map(|&c| self.gens[c].quotient_by_gcd(u)))?;
            if colon.iter().all(|c| c.degree() == 1) {
                candidates.push((colon.len(), i));
            }
        }
        candidates.sort_unstable();
        for (_, i) in candidates {
            chosen.push(i);
            used[i] = true;
            if self.extend(chosen, used)? {
                return Ok(true);
            }
            chosen.pop();
            used[i] = false;
        }
        self.failed.insert(used.clone());
        Ok(false)
    }
}

/// Failing instance of the exchange property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub u: Monomial,
    pub v: Monomial,
    /// Variable with `a_i > b_i` for which no exchange exists.
    pub i: usize,
    pub j: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolymatroidCheck {
    pub polymatroidal: bool,
    pub witness: Option<ExchangeWitness>,
}

/// Exchange property: for `u, v` in `G(I)` and every `i` with `a_i > b_i`
/// there is `j` with `a_j < b_j` and `x_j u / x_i` in `G(I)`.
pub fn is_polymatroidal(ideal: &MonomialIdeal) -> PolymatroidCheck {
    if ideal.is_zero() || !ideal.is_equigenerated() {
        return PolymatroidCheck {
            polymatroidal: false,
            witness: None,
        };
    }
    let n = ideal.nvars();
    let gens: HashSet<&[u32]> = ideal.gens().iter().map(Monomial::exponents).collect();
    let mut scratch = vec![0u32; n];
    for u in ideal.gens() {
        for v in ideal.gens() {
            for i in 0..n {
                if u.exp(i) <= v.exp(i) {
                    continue;
                }
                let found = (0..n).filter(|&j| u.exp(j) < v.exp(j)).find(|&j| {
                    scratch.copy_from_slice(u.exponents());
                    scratch[i] -= 1;
                    scratch[j] += 1;
                    gens.contains(scratch.as_slice())
                });
                if found.is_none() {
                    return PolymatroidCheck {
                        polymatroidal: false,
                        witness: Some(ExchangeWitness {
                            u: u.clone(),
                            v: v.clone(),
                            i,
                            j: None,
                        }),
                    };
                }
            }
        }
    }
    PolymatroidCheck {
        polymatroidal: true,
        witness: None,
    }
}

/// Generators ordered `u_1 >_rev u_2 >_rev ... >_rev u_s`.
pub fn revlex_order(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    if !ideal.is_equigenerated() {
        return Err(Error::Unsupported("revlex ordering needs an equigenerated ideal".into()));
    }
    let mut gens = ideal.gens().to_vec();
    gens.sort_by(|a, b| b.revlex_cmp(a));
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::resolution::depth_quotient_oracle;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(Arc::new(VariableSet::indexed("x", n)), gens).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn two_generators_sharing_a_variable() {
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1]]);
        let cert = verify_linear_quotients(&i, &[m(&[1, 1, 0]), m(&[1, 0, 1])]).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.q, 1);
        assert_eq!(cert.steps[0].colon, vec![m(&[0, 1, 0])]);
        assert_eq!(depth_by_linear_quotients(&cert, 3).unwrap(), 1);
        assert_eq!(depth_quotient_oracle(&i).unwrap(), 1);
    }

    #[test]
    fn disjoint_edges_have_no_linear_quotients() {
        let i = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let cert = verify_linear_quotients(&i, &[m(&[0, 0, 1, 1]), m(&[1, 1, 0, 0])]).unwrap();
        assert!(!cert.valid);
        assert_eq!(depth_by_linear_quotients(&cert, 4), Err(Error::InvalidCertificate));
        assert_eq!(find_linear_quotients_order(&i, 100).unwrap(), None);
    }

    #[test]
    fn three_points_revlex() {
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let order = revlex_order(&i).unwrap();
        assert_eq!(order, vec![m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 1, 1])]);
        let cert = verify_linear_quotients(&i, &order).unwrap();
        assert!(cert.valid);
        // colons (x2) then (x1)
        assert_eq!(cert.q_list(), vec![1, 1]);
        assert_eq!(cert.q, 1);
        assert_eq!(depth_by_linear_quotients(&cert, 3).unwrap(), depth_quotient_oracle(&i).unwrap());
    }

    #[test]
    fn depth_formula_edge_values() {
        let cert = QuotientCertificate {
            ordering: vec![],
            steps: vec![],
            q: 5,
            valid: true,
        };
        assert_eq!(depth_by_linear_quotients(&cert, 6).unwrap(), 0);
        let cert = QuotientCertificate { q: 2, ..cert };
        assert_eq!(depth_by_linear_quotients(&cert, 6).unwrap(), 3);
    }

    #[test]
    fn ordering_must_be_a_degree_compatible_permutation() {
        let i = ideal(2, &[&[1, 0], &[0, 2]]);
        assert!(matches!(
            verify_linear_quotients(&i, &[m(&[0, 2]), m(&[1, 0])]),
            Err(Error::InvalidOrdering(_))
        ));
        assert!(matches!(
            verify_linear_quotients(&i, &[m(&[1, 0])]),
            Err(Error::InvalidOrdering(_))
        ));
        assert!(matches!(
            verify_linear_quotients(&i, &[m(&[1, 0]), m(&[1, 0])]),
            Err(Error::InvalidOrdering(_))
        ));
        assert!(verify_linear_quotients(&i, &[m(&[1, 0]), m(&[0, 2])]).unwrap().valid);
    }

    #[test]
    fn principal_ideal_certificate() {
        let i = ideal(3, &[&[1, 2, 0]]);
        let cert = find_linear_quotients_order(&i, 10).unwrap().unwrap();
        assert!(cert.valid);
        assert_eq!(cert.q, 0);
        assert_eq!(depth_by_linear_quotients(&cert, 3).unwrap(), 2);
    }

    #[test]
    fn search_cap_is_distinct_from_none() {
        let i = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert!(matches!(
            find_linear_quotients_order(&i, 1),
            Err(Error::ResourceLimit { cap: "search", .. })
        ));
    }

    #[test]
    fn partial_bounds() {
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let oracle = depth_quotient_oracle(&i).unwrap();
        let full = revlex_order(&i).unwrap();
        assert_eq!(partial_depth_bound(&i, &full).unwrap(), oracle);
        // a single generator gives n - 1, which exceeds the true depth 1
        assert_eq!(partial_depth_bound(&i, &full[..1]).unwrap(), 2);
        assert_eq!(partial_depth_bound(&i, &full[..2]).unwrap(), 1);
        for len in 1..=3 {
            assert!(partial_depth_bound(&i, &full[..len]).unwrap() >= oracle);
        }
        let bad = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 1, 1, 0]]);
        assert!(matches!(
            partial_depth_bound(&bad, &[m(&[1, 1, 0, 0]), m(&[0, 0, 1, 1])]),
            Err(Error::InvalidOrdering(_))
        ));
    }

    #[test]
    fn polymatroid_exchange() {
        // I_{4,2}
        let i = ideal(
            4,
            &[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]],
        );
        assert!(is_polymatroidal(&i).polymatroidal);
        let j = ideal(2, &[&[2, 0], &[0, 2]]);
        let check = is_polymatroidal(&j);
        assert!(!check.polymatroidal);
        let w = check.witness.unwrap();
        assert_eq!((w.u, w.v, w.i, w.j), (m(&[2, 0]), m(&[0, 2]), 0, None));
        assert!(is_polymatroidal(&ideal(3, &[&[1, 2, 0]])).polymatroidal);
        assert!(!is_polymatroidal(&ideal(2, &[&[1, 0], &[0, 2]])).polymatroidal);
    }

    #[test]
    fn revlex_examples() {
        // I_(3;1,1,2)
        let i = ideal(3, &[&[1, 1, 1], &[1, 0, 2], &[0, 1, 2]]);
        let order = revlex_order(&i).unwrap();
        assert_eq!(order, vec![m(&[1, 1, 1]), m(&[1, 0, 2]), m(&[0, 1, 2])]);
        let p = ideal(2, &[&[1, 1]]);
        assert_eq!(revlex_order(&p).unwrap(), vec![m(&[1, 1])]);
    }
}
