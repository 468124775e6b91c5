//! Monomials, monomial ideals and the operations the rest of the crate is
//! built on: products, powers, colons, minimalization and the lcm lattice.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the number of elements in an lcm lattice.
pub const DEFAULT_LATTICE_CAP: usize = 200_000;

/// Ordered list of distinct variable names. Index 0 is the greatest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidSpec("a variable set needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !valid_name(name) {
                return Err(Error::InvalidSpec(format!("invalid variable name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSpec(format!("duplicate variable `{name}`")));
            }
        }
        Ok(VariableSet { names })
    }

    /// `prefix1 .. prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        VariableSet {
            names: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial, stored as its exponent vector. The zero vector is `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n].into_boxed_slice(),
        }
    }

    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        Monomial {
            exps: exps.into().into_boxed_slice(),
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial::new(exps)
    }

    /// Squarefree monomial on the variables listed in `mask`.
    pub fn from_support(n: usize, mask: u64) -> Self {
        Monomial::new((0..n).map(|i| ((mask >> i) & 1) as u32).collect::<Vec<_>>())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Bit mask of the variables occurring in the monomial (first 64 only).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.same_len(other)?;
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::new(exps))
    }

    pub fn checked_pow(&self, k: u32) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::new(exps))
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if self.exps.len() != other.exps.len() {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial::new(exps))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect::<Vec<_>>(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect::<Vec<_>>(),
        )
    }

    /// `self / gcd(self, other)`.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect::<Vec<_>>(),
        )
    }

    /// Lexicographic comparison with `x_1 > x_2 > ... > x_n`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.iter().cmp(other.exps.iter())
    }

    /// Reverse lexicographic comparison with `x_1 > ... > x_n`, graded by degree.
    pub fn revlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    // the smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }

    /// Canonical serialization order: degree ascending, then lex-greatest first.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.lex_cmp(self))
    }

    fn same_len(&self, other: &Monomial) -> Result<()> {
        if self.exps.len() == other.exps.len() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// Renders the monomial with the given variable names (`x1^2 x3`, or `1`).
    pub fn display<'a>(&'a self, vars: &'a VariableSet) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..])
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a VariableSet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(self.vars.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Reduces a generator list to its unique minimal generating set, sorted canonically.
pub fn minimalize(gens: impl IntoIterator<Item = Monomial>) -> Result<Vec<Monomial>> {
    let mut gens: Vec<Monomial> = gens.into_iter().collect();
    if let Some(first) = gens.first() {
        let n = first.nvars();
        if gens.iter().any(|g| g.nvars() != n) {
            return Err(Error::AmbientMismatch);
        }
    }
    gens.sort_by(Monomial::canonical_cmp);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    // kept[..lower] have degree below the current one; after dedup only they can divide g
    let mut lower = 0;
    for g in gens {
        let d = g.degree();
        while lower < kept.len() && kept[lower].degree() < d {
            lower += 1;
        }
        if !kept[..lower].iter().any(|h| h.divides(&g)) {
            kept.push(g);
        }
    }
    Ok(kept)
}

/// A monomial ideal with its minimal generators in canonical order.
///
/// The zero ideal has no generators; the unit ideal has the single generator `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Arc<VariableSet>,
    gens: Vec<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display(&self.vars))?;
        }
        f.write_str(")")
    }
}

impl MonomialIdeal {
    pub fn new(vars: Arc<VariableSet>, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens = minimalize(gens)?;
        if gens.first().is_some_and(|g| g.nvars() != vars.len()) {
            return Err(Error::AmbientMismatch);
        }
        Ok(MonomialIdeal { vars, gens })
    }

    /// Builds an ideal from exponent vectors.
    pub fn from_exponents(vars: Arc<VariableSet>, gens: &[&[u32]]) -> Result<Self> {
        Self::new(vars, gens.iter().map(|e| Monomial::new(e.to_vec())))
    }

    pub fn zero(vars: Arc<VariableSet>) -> Self {
        MonomialIdeal { vars, gens: Vec::new() }
    }

    pub fn unit(vars: Arc<VariableSet>) -> Self {
        let n = vars.len();
        MonomialIdeal {
            vars,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Minimal generators `G(I)` in canonical order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Rejects the zero and unit ideals.
    pub fn require_proper_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    /// The common degree of all generators, if there is one.
    pub fn generating_degree(&self) -> Option<u64> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.generating_degree().is_some()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    pub fn is_minimal_generator(&self, u: &Monomial) -> bool {
        self.gens.binary_search_by(|g| g.canonical_cmp(u)).is_ok()
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.checked_mul(b)?);
            }
        }
        MonomialIdeal::new(self.vars.clone(), prods)
    }

    /// `I^k`; `k = 0` gives the unit ideal.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Ok(MonomialIdeal::unit(self.vars.clone()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I : u`, generated by `v / gcd(v, u)` for `v` in `G(I)`.
    pub fn colon(&self, u: &Monomial) -> Result<MonomialIdeal> {
        if u.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch);
        }
        MonomialIdeal::new(
            self.vars.clone(),
            self.gens.iter().map(|v| v.quotient_by_gcd(u)),
        )
    }

    /// Closure of the generator degrees under componentwise max.
    pub fn lcm_lattice(&self, cap: usize) -> Result<MultidegreeSet> {
        self.require_nonzero()?;
        let mut seen: HashSet<Monomial> = self.gens.iter().cloned().collect();
        if seen.len() > cap {
            return Err(Error::limit("lattice", cap));
        }
        let mut work: Vec<Monomial> = self.gens.clone();
        while let Some(a) = work.pop() {
            for g in &self.gens {
                let m = a.lcm(g);
                if !seen.contains(&m) {
                    if seen.len() >= cap {
                        return Err(Error::limit("lattice", cap));
                    }
                    seen.insert(m.clone());
                    work.push(m);
                }
            }
        }
        let mut degrees: Vec<Monomial> = seen.into_iter().collect();
        degrees.sort_by(deglex_cmp);
        Ok(MultidegreeSet { degrees })
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else {
            Ok(())
        }
    }

    /// Height of `I`: the least number of variables meeting every generator support.
    pub fn height(&self) -> Result<usize> {
        self.require_proper_nonzero()?;
        if self.nvars() > 64 {
            return Err(Error::Unsupported("height needs at most 64 variables".into()));
        }
        let supports: Vec<u64> = self.gens.iter().map(Monomial::support_mask).collect();
        let mut best = self.nvars();
        min_cover(&supports, 0, 0, &mut best);
        Ok(best)
    }

    /// `dim S/I = n - height(I)`.
    pub fn krull_dim_quotient(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if self.is_zero() {
            return Ok(self.nvars());
        }
        Ok(self.nvars() - self.height()?)
    }
}

fn min_cover(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    match supports.iter().find(|&&s| s & chosen == 0) {
        None => *best = size,
        Some(&s) => {
            let mut rest = s;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                min_cover(supports, chosen | bit, size + 1, best);
            }
        }
    }
}

/// Degree ascending, then lexicographic with `x_1` greatest first.
pub fn deglex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.canonical_cmp(b)
}

/// Elements of an lcm lattice, ordered by degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultidegreeSet {
    degrees: Vec<Monomial>,
}

impl MultidegreeSet {
    pub fn degrees(&self) -> &[Monomial] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn contains(&self, a: &Monomial) -> bool {
        self.degrees.binary_search_by(|d| deglex_cmp(d, a)).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Arc<VariableSet> {
        Arc::new(VariableSet::indexed("x", n))
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(vars(n), gens).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(minimalize([m(&[1, 0]), m(&[2, 0])]).unwrap(), vec![m(&[1, 0])]);
        assert_eq!(
            minimalize([m(&[1, 1, 0]), m(&[0, 1, 1]), m(&[1, 1, 1])]).unwrap(),
            vec![m(&[1, 1, 0]), m(&[0, 1, 1])]
        );
        let sq = vec![m(&[2, 2, 0]), m(&[2, 1, 1]), m(&[2, 0, 2])];
        assert_eq!(minimalize(sq.clone()).unwrap(), sq);
    }

    #[test]
    fn minimalize_rejects_mixed_lengths() {
        assert_eq!(
            minimalize([m(&[1, 0]), m(&[1, 0, 0])]),
            Err(Error::AmbientMismatch)
        );
    }

    #[test]
    fn power_examples() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(
            i.power(2).unwrap().gens(),
            &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]
        );
        let p = ideal(2, &[&[1, 1]]);
        assert_eq!(p.power(3).unwrap().gens(), &[m(&[3, 3])]);
        assert!(p.power(0).unwrap().is_unit());
    }

    #[test]
    fn power_overflow_is_an_error() {
        let i = ideal(1, &[&[u32::MAX / 2 + 1]]);
        assert_eq!(i.power(2), Err(Error::ExponentOverflow));
    }

    #[test]
    fn colon_examples() {
        let i = ideal(3, &[&[1, 1, 0]]);
        assert_eq!(i.colon(&m(&[1, 0, 1])).unwrap().gens(), &[m(&[0, 1, 0])]);
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1]]);
        assert_eq!(i.colon(&m(&[0, 1, 1])).unwrap().gens(), &[m(&[1, 0, 0])]);
        let i = ideal(1, &[&[2]]);
        assert_eq!(i.colon(&m(&[1])).unwrap().gens(), &[m(&[1])]);
    }

    #[test]
    fn contains_examples() {
        assert!(ideal(2, &[&[1, 1]]).contains(&m(&[2, 1])));
        assert!(!ideal(1, &[&[1]]).contains(&m(&[0])));
    }

    #[test]
    fn lattice_examples() {
        let l = ideal(2, &[&[1, 0], &[0, 1]]).lcm_lattice(100).unwrap();
        assert_eq!(l.degrees(), &[m(&[1, 0]), m(&[0, 1]), m(&[1, 1])]);
        let l = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
            .lcm_lattice(100)
            .unwrap();
        assert_eq!(l.len(), 4);
        assert!(l.contains(&m(&[1, 1, 1])));
        let l = ideal(3, &[&[2, 0, 1]]).lcm_lattice(100).unwrap();
        assert_eq!(l.degrees(), &[m(&[2, 0, 1])]);
    }

    #[test]
    fn lattice_cap_names_the_cap() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        match i.lcm_lattice(3) {
            Err(Error::ResourceLimit { cap, limit, .. }) => {
                assert_eq!(cap, "lattice");
                assert_eq!(limit, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn krull_dimension() {
        assert_eq!(ideal(3, &[&[1, 1, 1]]).krull_dim_quotient().unwrap(), 2);
        // squarefree Veronese I_{4,3}
        let i = ideal(4, &[&[1, 1, 1, 0], &[1, 1, 0, 1], &[1, 0, 1, 1], &[0, 1, 1, 1]]);
        assert_eq!(i.krull_dim_quotient().unwrap(), 2);
        assert_eq!(
            MonomialIdeal::unit(vars(2)).krull_dim_quotient(),
            Err(Error::UnitIdeal)
        );
    }

    #[test]
    fn revlex_comparison() {
        // x1x2 > x1x3 > x2x3
        assert_eq!(m(&[1, 1, 0]).revlex_cmp(&m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(m(&[1, 0, 1]).revlex_cmp(&m(&[0, 1, 1])), Ordering::Greater);
        assert_eq!(m(&[1, 1, 1]).revlex_cmp(&m(&[1, 0, 2])), Ordering::Greater);
    }
}
