use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

use super::order::TermOrder;

pub const DEFAULT_BUCHBERGER_CAP: usize = 100_000;

/// Pure-difference binomial `lead - trail` with `lead > trail`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    lead: Monomial,
    trail: Monomial,
}

impl Binomial {
    /// Orients `a - b` under `order`; `None` when `a == b`.
    pub fn new(a: Monomial, b: Monomial, order: &TermOrder) -> Option<Self> {
        match order.cmp(&a, &b) {
            Ordering::Greater => Some(Binomial { lead: a, trail: b }),
            Ordering::Less => Some(Binomial { lead: b, trail: a }),
            Ordering::Equal => None,
        }
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn trail(&self) -> &Monomial {
        &self.trail
    }

    pub fn terms(&self) -> [&Monomial; 2] {
        [&self.lead, &self.trail]
    }
}

/// A Gröbner basis of binomials, sorted by lead term ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Binomial>,
    order: TermOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Minimal generators of the initial ideal (for a reduced basis).
    pub fn leads(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(Binomial::lead)
    }

    pub fn in_initial_ideal(&self, m: &Monomial) -> bool {
        self.leads().any(|l| l.divides(m))
    }

    /// The standard monomial congruent to `m` modulo the ideal.
    pub fn normal_form(&self, m: &Monomial) -> Result<Monomial> {
        normal_form(&self.elements, m)
    }

    /// Ideal membership of `a - b`.
    pub fn contains_binomial(&self, a: &Monomial, b: &Monomial) -> Result<bool> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }
}

fn normal_form(basis: &[Binomial], m: &Monomial) -> Result<Monomial> {
    let mut m = m.clone();
    while let Some(g) = basis.iter().find(|g| g.lead.divides(&m)) {
        let q = m.checked_div(&g.lead).expect("lead divides m");
        m = q.checked_mul(&g.trail)?;
    }
    Ok(m)
}

/// Pending S-pair ordered so that the heap pops the smallest lcm first.
struct Pair<'a> {
    lcm: Monomial,
    i: usize,
    j: usize,
    order: &'a TermOrder,
}

impl PartialEq for Pair<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pair<'_> {}

impl PartialOrd for Pair<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pair<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&self.lcm, &other.lcm)
            .then_with(|| (self.j, self.i).cmp(&(other.j, other.i)))
            .reverse()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Normal selection strategy (smallest lcm first, ties by insertion order),
/// with the product and chain criteria. `cap` bounds the number of S-pair
/// reductions.
pub fn buchberger(gens: Vec<Binomial>, order: &TermOrder, cap: usize) -> Result<GroebnerBasis> {
    if let Some(g) = gens.iter().find(|g| g.lead.nvars() != order.nvars() || g.trail.nvars() != order.nvars()) {
        return Err(Error::Internal(format!(
            "binomial has {} variables, order expects {}",
            g.lead.nvars(),
            order.nvars()
        )));
    }
    let mut basis: Vec<Binomial> = Vec::new();
    for g in gens {
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    let mut heap = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&basis, order, &mut heap, &mut pending, i, j);
        }
    }

    let mut reductions = 0usize;
    while let Some(Pair { lcm, i, j, .. }) = heap.pop() {
        pending.remove(&(i, j));
        if basis[i].lead.gcd(&basis[j].lead).is_one() {
            continue;
        }
        if chain_criterion(&basis, &pending, &lcm, i, j) {
            continue;
        }
        if reductions == cap {
            return Err(Error::limit("buchberger", cap).with_context(format!(
                "basis size {}, pending pairs {}, reductions {}",
                basis.len(),
                pending.len() + 1,
                reductions
            )));
        }
        reductions += 1;
        let a = lcm.checked_div(&basis[i].lead).expect("lead divides lcm");
        let b = lcm.checked_div(&basis[j].lead).expect("lead divides lcm");
        let s1 = normal_form(&basis, &a.checked_mul(&basis[i].trail)?)?;
        let s2 = normal_form(&basis, &b.checked_mul(&basis[j].trail)?)?;
        if let Some(h) = Binomial::new(s1, s2, order) {
            basis.push(h);
            let k = basis.len() - 1;
            for i in 0..k {
                push_pair(&basis, order, &mut heap, &mut pending, i, k);
            }
        }
    }
    reduce(basis, order)
}

fn push_pair<'a>(
    basis: &[Binomial],
    order: &'a TermOrder,
    heap: &mut BinaryHeap<Pair<'a>>,
    pending: &mut HashSet<(usize, usize)>,
    i: usize,
    j: usize,
) {
    let lcm = basis[i].lead.lcm(&basis[j].lead);
    pending.insert((i, j));
    heap.push(Pair { lcm, i, j, order });
}

/// Some `lead_k` divides `lcm` and both pairs `(i,k)`, `(j,k)` are already treated.
fn chain_criterion(
    basis: &[Binomial],
    pending: &HashSet<(usize, usize)>,
    lcm: &Monomial,
    i: usize,
    j: usize,
) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && basis[k].lead.divides(lcm)
            && !pending.contains(&key(i, k))
            && !pending.contains(&key(j, k))
    })
}

/// Drops redundant elements, reduces trails and sorts by lead.
fn reduce(basis: Vec<Binomial>, order: &TermOrder) -> Result<GroebnerBasis> {
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp(&a.lead, &b.lead));
    sorted.dedup_by(|a, b| a.lead == b.lead);
    let minimal: Vec<Binomial> = sorted
        .iter()
        .enumerate()
        .filter(|(idx, g)| {
            !sorted
                .iter()
                .enumerate()
                .any(|(o, h)| o != *idx && h.lead.divides(&g.lead))
        })
        .map(|(_, g)| g.clone())
        .collect();
    let mut elements = Vec::with_capacity(minimal.len());
    for g in &minimal {
        let trail = normal_form(&minimal, &g.trail)?;
        let b = Binomial::new(g.lead.clone(), trail, order)
            .ok_or_else(|| Error::Internal("trail reduced to its lead".into()))?;
        if b.lead != g.lead {
            return Err(Error::Internal("reduction changed a lead term".into()));
        }
        elements.push(b);
    }
    Ok(GroebnerBasis {
        elements,
        order: order.clone(),
        reduced: true,
    })
}
