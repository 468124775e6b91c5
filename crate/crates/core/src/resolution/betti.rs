use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::field::Field;
use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet, DEFAULT_LATTICE_CAP};
use crate::par::{self, Execution};

/// Upper Koszul simplicial complex `K^a(I)`.
///
/// Faces are the sets `W` of variables with `a - e_W >= 0` and `x^(a - e_W)` in `I`.
pub fn upper_koszul(ideal: &MonomialIdeal, a: &Monomial) -> SimplicialComplex {
    let facets = koszul_facets(ideal, a);
    if facets.is_empty() {
        SimplicialComplex::void(ideal.nvars())
    } else {
        SimplicialComplex::from_facets(ideal.nvars(), facets)
    }
}

/// One facet `{i : a_i > g_i}` per generator `g` dividing `x^a`.
fn koszul_facets(ideal: &MonomialIdeal, a: &Monomial) -> Vec<u64> {
    let n = ideal.nvars();
    ideal
        .gens()
        .iter()
        .filter(|g| g.divides(a))
        .map(|g| {
            (0..n)
                .filter(|&i| a.exp(i) > g.exp(i))
                .fold(0u64, |m, i| m | (1 << i))
        })
        .collect()
}

/// Entry `i` of the result is `β_{i,a}(I)`; cones are short-circuited.
fn koszul_betti_at(ideal: &MonomialIdeal, a: &Monomial, field: Field) -> Vec<usize> {
    let facets = koszul_facets(ideal, a);
    if facets.is_empty() {
        return Vec::new();
    }
    // a vertex lying in every facet makes the complex a cone
    if facets.iter().fold(u64::MAX, |acc, &f| acc & f) != 0 {
        return Vec::new();
    }
    SimplicialComplex::from_facets(ideal.nvars(), facets).reduced_homology(field)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub degree: Vec<u32>,
    pub rank: usize,
}

/// Multigraded Betti numbers `β_{i,a}(I)` of a monomial ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    field: Field,
    vars: VariableSet,
    /// Sorted by `i`, then by multidegree (degree, then lex).
    entries: Vec<(usize, Monomial, usize)>,
}

/// Serializable view of a [`BettiTable`].
#[derive(Debug, Clone, Serialize)]
pub struct BettiDocument {
    pub field: Field,
    pub vars: Vec<String>,
    pub multigraded: Vec<BettiEntry>,
    pub graded: Vec<GradedEntry>,
    pub projdim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedEntry {
    pub i: usize,
    pub j: u64,
    pub rank: usize,
}

impl BettiTable {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> {
        self.entries.iter().map(|(i, a, r)| (*i, a, *r))
    }

    pub fn get(&self, i: usize, a: &Monomial) -> usize {
        self.entries
            .iter()
            .find(|(j, b, _)| *j == i && b == a)
            .map_or(0, |e| e.2)
    }

    /// Collapsed table `β_{i,j} = Σ_{|a| = j} β_{i,a}`.
    pub fn graded(&self) -> BTreeMap<(usize, u64), usize> {
        let mut out = BTreeMap::new();
        for (i, a, r) in &self.entries {
            *out.entry((*i, a.degree())).or_insert(0) += r;
        }
        out
    }

    pub fn graded_rank(&self, i: usize, j: u64) -> usize {
        self.graded().get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Largest `i` with a nonzero Betti number (projective dimension of `I`).
    pub fn projdim(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.0).max()
    }

    /// `β_{i,i+d}` for `i = 0..=projdim`.
    pub fn linear_strand(&self, d: u64) -> Vec<usize> {
        let graded = self.graded();
        let top = self.projdim().unwrap_or(0);
        (0..=top)
            .map(|i| graded.get(&(i, i as u64 + d)).copied().unwrap_or(0))
            .collect()
    }

    pub fn document(&self) -> BettiDocument {
        BettiDocument {
            field: self.field,
            vars: self.vars.names().to_vec(),
            multigraded: self
                .entries
                .iter()
                .map(|(i, a, r)| BettiEntry {
                    i: *i,
                    degree: a.exponents().to_vec(),
                    rank: *r,
                })
                .collect(),
            graded: self
                .graded()
                .into_iter()
                .map(|((i, j), rank)| GradedEntry { i, j, rank })
                .collect(),
            projdim: self.projdim(),
        }
    }

    /// Aligned text table: rows are homological degrees `i`, columns total degrees `j`.
    pub fn text_report(&self) -> String {
        let graded = self.graded();
        let mut js: Vec<u64> = graded.keys().map(|k| k.1).collect();
        js.sort_unstable();
        js.dedup();
        let top = self.projdim();
        let mut out = format!("betti numbers over {}\n", self.field);
        let width = graded
            .values()
            .map(|r| r.to_string().len())
            .chain(js.iter().map(|j| j.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(1);
        let _ = write!(out, "{:>5}", "i\\j");
        for j in &js {
            let _ = write!(out, " {j:>width$}");
        }
        out.push('\n');
        if let Some(top) = top {
            for i in 0..=top {
                let _ = write!(out, "{i:>5}");
                for j in &js {
                    match graded.get(&(i, *j)) {
                        Some(r) => {
                            let _ = write!(out, " {r:>width$}");
                        }
                        None => {
                            let _ = write!(out, " {:>width$}", ".");
                        }
                    }
                }
                out.push('\n');
            }
        }
        out
    }
}

/// The sequence `depth S/I^k`, `k = 1..=kmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthProfile {
    pub values: Vec<usize>,
    /// `(k0, value)` when the last `min(3, kmax)` values agree; `k0` is where
    /// the constant run starts. Observational only.
    pub stable_tail: Option<(usize, usize)>,
}

impl DepthProfile {
    pub fn from_values(values: Vec<usize>) -> Self {
        let window = values.len().min(3);
        let stable_tail = match values.last() {
            Some(&last) if window > 0 && values[values.len() - window..].iter().all(|&v| v == last) => {
                let start = values.iter().rposition(|&v| v != last).map_or(0, |p| p + 1);
                Some((start + 1, last))
            }
            _ => None,
        };
        DepthProfile { values, stable_tail }
    }

    /// `depth S/I^k`, with `k` 1-based.
    pub fn at(&self, k: usize) -> usize {
        self.values[k - 1]
    }

    pub fn min(&self) -> Option<usize> {
        self.values.iter().copied().min()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Configuration for Betti-number computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub field: Field,
    pub lattice_cap: usize,
    pub execution: Execution,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            field: Field::Rationals,
            lattice_cap: DEFAULT_LATTICE_CAP,
            execution: Execution::default(),
        }
    }
}

impl Oracle {
    pub fn with_field(field: Field) -> Self {
        Oracle {
            field,
            ..Oracle::default()
        }
    }

    pub fn betti_table(&self, ideal: &MonomialIdeal) -> Result<BettiTable> {
        ideal.require_proper_nonzero()?;
        if ideal.nvars() > 64 {
            return Err(Error::Unsupported("the Betti oracle handles at most 64 variables".into()));
        }
        let lattice = ideal.lcm_lattice(self.lattice_cap)?;
        let field = self.field;
        let per_degree = par::map(self.execution, lattice.degrees(), |a| {
            koszul_betti_at(ideal, a, field)
        });
        let mut entries = Vec::new();
        for (a, ranks) in lattice.degrees().iter().zip(per_degree) {
            for (i, r) in ranks.into_iter().enumerate() {
                if r > 0 {
                    entries.push((i, a.clone(), r));
                }
            }
        }
        // stable sort keeps the lattice order within each homological degree
        entries.sort_by_key(|e| e.0);
        Ok(BettiTable {
            field,
            vars: (**ideal.vars()).clone(),
            entries,
        })
    }

    /// Projective dimension of `I` (not of `S/I`).
    pub fn projdim(&self, ideal: &MonomialIdeal) -> Result<usize> {
        Ok(self.betti_table(ideal)?.projdim().unwrap_or(0))
    }

    /// `depth S/I = n - (projdim I + 1)`.
    pub fn depth(&self, ideal: &MonomialIdeal) -> Result<usize> {
        let pd = self.projdim(ideal)?;
        ideal
            .nvars()
            .checked_sub(pd + 1)
            .ok_or_else(|| Error::Internal(format!("projective dimension {pd} exceeds n - 1")))
    }

    pub fn depth_profile(&self, ideal: &MonomialIdeal, kmax: usize) -> Result<DepthProfile> {
        if kmax == 0 {
            return Err(Error::InvalidSpec("kmax must be at least 1".into()));
        }
        let mut values = Vec::with_capacity(kmax);
        let mut power = ideal.clone();
        for k in 1..=kmax {
            if k > 1 {
                power = power
                    .product(ideal)
                    .map_err(|e| e.with_context(format!("k={k}")))?;
            }
            values.push(
                self.depth(&power)
                    .map_err(|e| e.with_context(format!("k={k}")))?,
            );
        }
        Ok(DepthProfile::from_values(values))
    }

    /// True iff `I` is generated in one degree `d` and `β_{i,j} = 0` for `j ≠ i + d`.
    pub fn has_linear_resolution(&self, ideal: &MonomialIdeal) -> Result<bool> {
        let Some(d) = ideal.generating_degree() else {
            return Ok(false);
        };
        let table = self.betti_table(ideal)?;
        let linear = table.entries().all(|(i, a, _)| a.degree() == i as u64 + d);
        Ok(linear)
    }

    /// Length of the lowest linear strand: `max{i : β_{i,i+d} ≠ 0}`.
    pub fn linear_projdim(&self, ideal: &MonomialIdeal) -> Result<usize> {
        let d = ideal
            .generating_degree()
            .ok_or_else(|| Error::Unsupported("generators of mixed degree".into()))?;
        let strand = self.betti_table(ideal)?.linear_strand(d);
        Ok(strand.iter().rposition(|&b| b != 0).unwrap_or(0))
    }
}

pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    Oracle::default().betti_table(ideal)
}

pub fn depth_quotient_oracle(ideal: &MonomialIdeal) -> Result<usize> {
    Oracle::default().depth(ideal)
}

pub fn depth_profile(ideal: &MonomialIdeal, kmax: usize) -> Result<DepthProfile> {
    Oracle::default().depth_profile(ideal, kmax)
}

pub fn has_linear_resolution(ideal: &MonomialIdeal) -> Result<bool> {
    Oracle::default().has_linear_resolution(ideal)
}

pub fn linear_projdim(ideal: &MonomialIdeal) -> Result<usize> {
    Oracle::default().linear_projdim(ideal)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(Arc::new(VariableSet::indexed("x", n)), gens).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn koszul_complex_of_two_variables() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let c = upper_koszul(&i, &m(&[1, 1]));
        assert_eq!(c.faces().collect::<Vec<_>>(), vec![0b00, 0b01, 0b10]);
        assert_eq!(c.reduced_homology(Field::Rationals), vec![0, 1]);
        let c = upper_koszul(&ideal(2, &[&[1, 0]]), &m(&[1, 0]));
        assert_eq!(c.faces().collect::<Vec<_>>(), vec![0]);
        assert!(upper_koszul(&i, &m(&[0, 0])).is_void());
    }

    #[test]
    fn betti_of_maximal_ideal_in_two_variables() {
        let t = betti_table(&ideal(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(t.get(0, &m(&[1, 0])), 1);
        assert_eq!(t.get(0, &m(&[0, 1])), 1);
        assert_eq!(t.get(1, &m(&[1, 1])), 1);
        assert_eq!(t.total(0), 2);
        assert_eq!(t.projdim(), Some(1));
    }

    #[test]
    fn betti_of_three_points() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let t = betti_table(&i).unwrap();
        assert_eq!(t.total(0), 3);
        assert_eq!(t.graded_rank(1, 3), 2);
        assert_eq!(t.total(1), 2);
        assert_eq!(t.projdim(), Some(1));
        assert!(has_linear_resolution(&i).unwrap());
        assert_eq!(linear_projdim(&i).unwrap(), 1);
    }

    #[test]
    fn disjoint_edges_are_not_linear() {
        let i = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let t = betti_table(&i).unwrap();
        // Koszul syzygy in degree 4 with i = 1 (not 1 + 2)
        assert_eq!(t.graded_rank(1, 4), 1);
        assert!(!has_linear_resolution(&i).unwrap());
        assert_eq!(linear_projdim(&i).unwrap(), 0);
    }

    #[test]
    fn principal_ideals() {
        let i = ideal(2, &[&[1, 1]]);
        assert_eq!(depth_quotient_oracle(&i).unwrap(), 1);
        assert!(has_linear_resolution(&i).unwrap());
        assert_eq!(linear_projdim(&i).unwrap(), 0);
        assert_eq!(depth_profile(&i, 3).unwrap().values, vec![1, 1, 1]);
    }

    #[test]
    fn mixed_degrees() {
        let i = ideal(2, &[&[1, 0], &[0, 2]]);
        assert!(!has_linear_resolution(&i).unwrap());
        assert!(matches!(linear_projdim(&i), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rejects_zero_and_unit() {
        let v = Arc::new(VariableSet::indexed("x", 2));
        assert_eq!(betti_table(&MonomialIdeal::zero(v.clone())), Err(Error::ZeroIdeal));
        assert_eq!(betti_table(&MonomialIdeal::unit(v)), Err(Error::UnitIdeal));
    }

    #[test]
    fn profile_tail() {
        let p = DepthProfile::from_values(vec![0, 1, 0, 2, 2]);
        assert_eq!(p.stable_tail, None);
        let p = DepthProfile::from_values(vec![3, 0, 0, 0]);
        assert_eq!(p.stable_tail, Some((2, 0)));
        let p = DepthProfile::from_values(vec![4]);
        assert_eq!(p.stable_tail, Some((1, 4)));
        assert!(DepthProfile::from_values(vec![3, 2, 2]).is_non_increasing());
    }

    #[test]
    fn lattice_cap_error_names_k() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let oracle = Oracle {
            lattice_cap: 5,
            ..Oracle::default()
        };
        match oracle.depth_profile(&i, 3) {
            Err(Error::ResourceLimit { cap, context, .. }) => {
                assert_eq!(cap, "lattice");
                assert_eq!(context, "k=2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn text_report_layout() {
        let t = betti_table(&ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap();
        assert_eq!(t.text_report(), "betti numbers over q\n  i\\j 2 3\n    0 3 .\n    1 . 2\n");
    }
}
