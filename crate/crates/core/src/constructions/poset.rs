use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

pub const DEFAULT_DELTA_CAP: usize = 14;
pub const DEFAULT_POSET_IDEAL_CAP: usize = 100_000;

/// Finite poset on at most 64 elements; `down[i]` is the set `{j : p_j ≤ p_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    down: Vec<u64>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `covers` (`(a, b)` means `p_a < p_b`).
    pub fn new(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n > 64 {
            return Err(Error::Unsupported("posets are limited to 64 elements".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidSpec("duplicate element names".into()));
        }
        let mut down: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::InvalidSpec("cover relation out of range".into()));
            }
            if a == b {
                return Err(Error::InvalidSpec(format!("cover {} < {} is a loop", names[a], names[b])));
            }
            down[b] |= 1 << a;
        }
        // closure: repeat until stable
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut acc = down[i];
                let mut rest = down[i];
                while rest != 0 {
                    let j = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    acc |= down[j];
                }
                if acc != down[i] {
                    down[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && down[i] & 1 << j != 0 && down[j] & 1 << i != 0 {
                    return Err(Error::InvalidSpec(format!(
                        "cover relations form a cycle through {} and {}",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(Poset { names, down })
    }

    pub fn indexed(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Poset::new((1..=n).map(|i| format!("p{i}")).collect(), covers)
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::indexed(n, &covers).expect("valid chain")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::indexed(n, &[]).expect("valid antichain")
    }

    /// Ordinal sum of antichains of the given sizes, bottom layer first.
    pub fn ordinal_sum(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidSpec("layer sizes must be positive".into()));
        }
        let mut covers = Vec::new();
        let mut start = 0;
        for w in sizes.windows(2) {
            for a in start..start + w[0] {
                for b in start + w[0]..start + w[0] + w[1] {
                    covers.push((a, b));
                }
            }
            start += w[0];
        }
        Poset::indexed(sizes.iter().sum(), &covers)
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

    /// `p_a ≤ p_b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b] & 1 << a != 0
    }

    /// The poset ideal generated by `set`.
    pub fn ideal_generated(&self, set: u64) -> u64 {
        let mut acc = 0;
        let mut rest = set;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc |= self.down[j];
        }
        acc
    }

    /// Maximal elements of `set`.
    pub fn maximal(&self, set: u64) -> u64 {
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let strictly_above = (0..self.len()).any(|i| i != j && set & 1 << i != 0 && self.leq(j, i));
            if !strictly_above {
                out |= 1 << j;
            }
        }
        out
    }

    pub fn is_antichain(&self, set: u64) -> bool {
        self.maximal(set) == set
    }

    /// Maximal chain length minus one.
    pub fn rank(&self) -> usize {
        let n = self.len();
        // elements sorted by size of down-set form a linear extension
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.down[i].count_ones());
        let mut height = vec![0usize; n];
        for &i in &order {
            height[i] = (0..n)
                .filter(|&j| j != i && self.leq(j, i))
                .map(|j| height[j] + 1)
                .max()
                .unwrap_or(0);
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// All poset ideals (down-closed subsets), sorted by size then bit pattern.
    pub fn poset_ideals(&self, cap: usize) -> Result<Vec<u64>> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.down[i].count_ones());
        let mut out = Vec::new();
        // elements in a linear extension; decide membership front to back
        fn rec(p: &Poset, order: &[usize], pos: usize, cur: u64, out: &mut Vec<u64>, cap: usize) -> Result<()> {
            if pos == order.len() {
                if out.len() == cap {
                    return Err(Error::limit("poset-ideals", cap));
                }
                out.push(cur);
                return Ok(());
            }
            let i = order[pos];
            rec(p, order, pos + 1, cur, out, cap)?;
            let below = p.down[i] & !(1 << i);
            if below & !cur == 0 {
                rec(p, order, pos + 1, cur | 1 << i, out, cap)?;
            }
            Ok(())
        }
        rec(self, &order, 0, 0, &mut out, cap)?;
        out.sort_by_key(|&s| (s.count_ones(), s));
        Ok(out)
    }

    /// Covers as `(lower, upper)` index pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for b in 0..n {
            for a in 0..n {
                if a != b && self.leq(a, b) {
                    let between = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                    if !between {
                        out.push((a, b));
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// `H_P = (u_I : I a poset ideal)` with `u_I = ∏_{p_i ∈ I} x_i ∏_{p_i ∉ I} y_i`,
/// in variables `x1..xn y1..yn`.
pub fn hp_ideal(p: &Poset, cap: usize) -> Result<MonomialIdeal> {
    let n = p.len();
    if n == 0 {
        return Err(Error::InvalidSpec("the poset must be nonempty".into()));
    }
    if 2 * n > 64 {
        return Err(Error::Unsupported("H_P needs 2n <= 64 variables".into()));
    }
    let vars = Arc::new(hp_variables(n));
    let full = (1u64 << n) - 1;
    let gens: Vec<Monomial> = p
        .poset_ideals(cap)?
        .into_iter()
        .map(|i| Monomial::from_support(2 * n, i | (full & !i) << n))
        .collect();
    MonomialIdeal::new(vars, gens)
}

fn hp_variables(n: usize) -> VariableSet {
    let names = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}")));
    VariableSet::new(names).expect("distinct names")
}

/// A `k`-acceptable sequence of antichains, by element name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaWitness {
    pub antichains: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Delta {
    pub value: usize,
    pub witness: DeltaWitness,
}

/// `δ(P;k)`: the largest `Σ|A_i|` over sequences of at most `k` pairwise
/// disjoint antichains with nested generated ideals.
pub fn delta(p: &Poset, k: usize, cap: usize) -> Result<Delta> {
    if k == 0 {
        return Err(Error::InvalidSpec("k must be at least 1".into()));
    }
    if p.len() > cap {
        return Err(Error::limit("delta", cap).with_context(format!("|P|={}", p.len())));
    }
    let ideals = p.poset_ideals(usize::MAX)?;
    let mut search = DeltaSearch {
        p,
        ideals: &ideals,
        memo: HashMap::new(),
    };
    let value = search.best(0, 0, k);
    // rebuild the witness from the memo
    let mut antichains = Vec::new();
    let (mut cur, mut used, mut left) = (0u64, 0u64, k);
    while left > 0 {
        let (v, next) = search.memo[&(cur, used, left)];
        let Some(ideal) = next else { break };
        let a = p.maximal(ideal);
        antichains.push(
            (0..p.len())
                .filter(|&i| a & 1 << i != 0)
                .map(|i| p.names[i].clone())
                .collect(),
        );
        debug_assert!(v >= a.count_ones() as usize);
        cur = ideal;
        used |= a;
        left -= 1;
    }
    Ok(Delta {
        value,
        witness: DeltaWitness { antichains },
    })
}

struct DeltaSearch<'a> {
    p: &'a Poset,
    ideals: &'a [u64],
    /// `(current ideal, used elements, steps left) -> (best gain, next ideal)`
    memo: HashMap<(u64, u64, usize), (usize, Option<u64>)>,
}

impl DeltaSearch<'_> {
    fn best(&mut self, cur: u64, used: u64, left: usize) -> usize {
        if left == 0 {
            return 0;
        }
        if let Some(&(v, _)) = self.memo.get(&(cur, used, left)) {
            return v;
        }
        let mut best = (0usize, None);
        for &ideal in self.ideals {
            if ideal & cur != cur || ideal == 0 {
                continue;
            }
            let a = self.p.maximal(ideal);
            if a & used != 0 {
                continue;
            }
            let gain = a.count_ones() as usize + self.best(ideal, used | a, left - 1);
            if gain > best.0 {
                best = (gain, Some(ideal));
            }
        }
        self.memo.insert((cur, used, left), best);
        best.0
    }
}

/// `2n - δ(P;k) - 1`.
pub fn predicted_depth_hp(p: &Poset, k: usize, cap: usize) -> Result<usize> {
    Ok(2 * p.len() - delta(p, k, cap)?.value - 1)
}

/// `G(H_P^k)` in the order under which it has linear quotients.
///
/// Each generator is written as `u_{I_1} ⋯ u_{I_k}` with `I_1 ⊆ ⋯ ⊆ I_k`,
/// recovered from its x-exponents. The `u_I` are ranked so that `u_I < u_J`
/// whenever `J ⊊ I`; generators are listed in decreasing lexicographic order
/// of their rank sequences.
pub fn hp_power_order(p: &Poset, k: u32, cap: usize) -> Result<Vec<Monomial>> {
    if k == 0 {
        return Err(Error::InvalidSpec("k must be at least 1".into()));
    }
    let n = p.len();
    let ideal = hp_ideal(p, cap)?;
    let power = ideal.power(k)?;
    let mut ranked = p.poset_ideals(cap)?;
    // larger ideals first, so their rank is smaller
    ranked.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), std::cmp::Reverse(s)));
    let rank_of: HashMap<u64, usize> = ranked.iter().enumerate().map(|(r, &s)| (s, r)).collect();
    let mut keyed = Vec::with_capacity(power.num_gens());
    for w in power.gens() {
        let mut key = Vec::with_capacity(k as usize);
        for j in 1..=k {
            let threshold = k - j + 1;
            let set = (0..n)
                .filter(|&i| w.exp(i) >= threshold)
                .fold(0u64, |m, i| m | 1 << i);
            let r = rank_of
                .get(&set)
                .ok_or_else(|| Error::Internal("x-exponents do not form a multichain of poset ideals".into()))?;
            key.push(*r);
        }
        let check = (0..n).all(|i| w.exp(i) + w.exp(n + i) == k);
        if !check {
            return Err(Error::Internal("generator is not a product of k monomials u_I".into()));
        }
        keyed.push((key, w.clone()));
    }
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(keyed.into_iter().map(|(_, w)| w).collect())
}

/// Parses `elements: ...` followed by `cover: a < b` lines; `#` starts a comment.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut names: Option<Vec<String>> = None;
    let mut covers = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if names.is_some() {
                return Err(Error::parse(line_no, 1, "duplicate `elements:` line"));
            }
            names = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("cover:") {
            let names = names
                .as_ref()
                .ok_or_else(|| Error::parse(line_no, 1, "`cover:` before `elements:`"))?;
            let (a, b) = rest
                .split_once('<')
                .ok_or_else(|| Error::parse(line_no, 7, "expected `a < b`"))?;
            let find = |s: &str| {
                names
                    .iter()
                    .position(|x| x == s.trim())
                    .ok_or_else(|| Error::parse(line_no, 7, format!("unknown element `{}`", s.trim())))
            };
            covers.push((find(a)?, find(b)?));
        } else {
            return Err(Error::parse(line_no, 1, "expected `elements:` or `cover:`"));
        }
    }
    let names = names.ok_or_else(|| Error::parse(1, 1, "missing `elements:` line"))?;
    Poset::new(names, &covers)
}

pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("elements: {}\n", p.names.join(" "));
    for (a, b) in p.covers() {
        out.push_str(&format!("cover: {} < {}\n", p.names[a], p.names[b]));
    }
    out
}

/// All posets on `n ≤ 4` elements up to isomorphism, in a fixed order.
pub fn posets_up_to_iso(n: usize) -> Result<Vec<Poset>> {
    if n > 4 {
        return Err(Error::Unsupported("poset enumeration is limited to 4 elements".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        // candidate strict order relation
        let mut down = vec![0u64; n];
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask & 1 << bit != 0 {
                down[b] |= 1 << a;
            }
        }
        let transitive = (0..n).all(|b| {
            (0..n).all(|a| down[b] & 1 << a == 0 || down[b] & down[a] == down[a])
        });
        let antisym = (0..n).all(|a| (0..n).all(|b| !(down[b] & 1 << a != 0 && down[a] & 1 << b != 0)));
        if !transitive || !antisym {
            continue;
        }
        let canon = perms
            .iter()
            .map(|perm| {
                let mut d = vec![0u64; n];
                for b in 0..n {
                    for a in 0..n {
                        if down[b] & 1 << a != 0 {
                            d[perm[b]] |= 1 << perm[a];
                        }
                    }
                }
                d
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon.clone()) {
            let covers: Vec<(usize, usize)> = (0..n)
                .flat_map(|b| (0..n).map(move |a| (a, b)))
                .filter(|&(a, b)| canon[b] & 1 << a != 0)
                .collect();
            out.push(Poset::indexed(n, &covers)?);
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linquot::verify_linear_quotients;

    /// δ straight from the definition: all sequences of at most k antichains.
    fn delta_brute(p: &Poset, k: usize) -> usize {
        let n = p.len();
        let antichains: Vec<u64> = (1u64..1 << n).filter(|&s| p.is_antichain(s)).collect();
        fn rec(p: &Poset, acs: &[u64], prev: u64, used: u64, left: usize) -> usize {
            let mut best = 0;
            if left == 0 {
                return 0;
            }
            for &a in acs {
                let gen = p.ideal_generated(a);
                if a & used == 0 && gen & prev == prev {
                    best = best.max(a.count_ones() as usize + rec(p, acs, gen, used | a, left - 1));
                }
            }
            best
        }
        rec(p, &antichains, 0, 0, k)
    }

    #[test]
    fn ideals_of_small_posets() {
        assert_eq!(Poset::antichain(2).poset_ideals(100).unwrap().len(), 4);
        assert_eq!(Poset::chain(2).poset_ideals(100).unwrap().len(), 3);
        assert!(Poset::antichain(3).poset_ideals(7).is_err());
    }

    #[test]
    fn hp_of_antichain_and_chain() {
        let h = hp_ideal(&Poset::antichain(2), 100).unwrap();
        assert_eq!(h.num_gens(), 4);
        let h = hp_ideal(&Poset::chain(2), 100).unwrap();
        assert_eq!(h.num_gens(), 3);
        // u_P and u_∅
        assert!(h.is_minimal_generator(&Monomial::new(vec![1, 1, 0, 0])));
        assert!(h.is_minimal_generator(&Monomial::new(vec![0, 0, 1, 1])));
        // chain p1 < p2: {p2} is not an ideal
        assert!(!h.contains(&Monomial::new(vec![0, 1, 1, 0])));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&Poset::chain(3), 2, 14).unwrap().value, 2);
        assert_eq!(delta(&Poset::antichain(4), 3, 14).unwrap().value, 4);
        let p = Poset::ordinal_sum(&[2, 1]).unwrap();
        assert_eq!(delta(&p, 1, 14).unwrap().value, 2);
        assert_eq!(delta(&p, 2, 14).unwrap().value, 3);
        assert!(delta(&Poset::antichain(15), 1, 14).is_err());
    }

    #[test]
    fn delta_witness_is_acceptable() {
        let p = Poset::ordinal_sum(&[3, 2, 1]).unwrap();
        let d = delta(&p, 2, 14).unwrap();
        assert_eq!(d.value, 5);
        let total: usize = d.witness.antichains.iter().map(Vec::len).sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn delta_matches_definition_on_all_small_posets() {
        for n in 1..=4 {
            for p in posets_up_to_iso(n).unwrap() {
                for k in 1..=4 {
                    assert_eq!(delta(&p, k, 14).unwrap().value, delta_brute(&p, k), "{:?} k={k}", p.covers());
                }
            }
        }
    }

    #[test]
    fn poset_counts_up_to_isomorphism() {
        let counts: Vec<usize> = (1..=4).map(|n| posets_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
    }

    #[test]
    fn ordinal_sum_structure() {
        let p = Poset::ordinal_sum(&[2, 1]).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.covers(), vec![(0, 2), (1, 2)]);
        let chain = Poset::ordinal_sum(&[1, 1, 1]).unwrap();
        assert_eq!(chain.covers(), Poset::chain(3).covers());
        assert_eq!(chain.rank(), 2);
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_depth_hp(&Poset::chain(3), 1, 14).unwrap(), 4);
        for k in 1..=3 {
            assert_eq!(predicted_depth_hp(&Poset::antichain(2), k, 14).unwrap(), 1);
        }
        let p = Poset::ordinal_sum(&[3, 2, 1]).unwrap();
        let profile: Vec<usize> = (1..=4).map(|k| predicted_depth_hp(&p, k, 14).unwrap()).collect();
        assert_eq!(profile, vec![8, 6, 5, 5]);
    }

    #[test]
    fn power_order_has_linear_quotients() {
        for (p, k, gens, q) in [
            (Poset::antichain(2), 2, 9, 2),
            (Poset::chain(2), 2, 6, 2),
            (Poset::ordinal_sum(&[2, 1]).unwrap(), 2, 0, 3),
        ] {
            let order = hp_power_order(&p, k, 1000).unwrap();
            if gens > 0 {
                assert_eq!(order.len(), gens);
            }
            let power = hp_ideal(&p, 1000).unwrap().power(k).unwrap();
            let cert = verify_linear_quotients(&power, &order).unwrap();
            assert!(cert.valid);
            assert_eq!(cert.q, q);
        }
    }

    #[test]
    fn poset_file_round_trip() {
        let p = Poset::ordinal_sum(&[2, 1]).unwrap();
        let text = write_poset(&p);
        assert_eq!(text, "elements: p1 p2 p3\ncover: p1 < p3\ncover: p2 < p3\n");
        assert_eq!(parse_poset(&text).unwrap(), p);
        assert!(parse_poset("elements: a b\ncover: a < b\ncover: b < a\n").is_err());
        assert!(parse_poset("elements: a\ncover: a < c\n").is_err());
    }
}
