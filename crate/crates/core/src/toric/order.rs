use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Monomial order `<#` on the y-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YOrder {
    Lex,
    /// Degree first, then reverse lexicographic.
    #[default]
    DegRevLex,
}

impl std::str::FromStr for YOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(YOrder::Lex),
            "revlex" | "degrevlex" => Ok(YOrder::DegRevLex),
            _ => Err(Error::InvalidSpec(format!("unknown y-order `{s}`; use lex or revlex"))),
        }
    }
}

/// Block order on `K[t?, y_1..y_m, x_1..x_n]`.
///
/// Monomials are exponent vectors laid out as `[t?] y_1..y_m x_1..x_n`.
/// With `t` present it is compared first by its exponent (elimination of `t`).
/// Then the y-parts are compared by `<#`, and ties are broken by lex on the
/// x-part with `x_1 > ... > x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    m: usize,
    n: usize,
    has_t: bool,
    y_order: YOrder,
    /// `y_priority[0]` is the greatest y-variable.
    y_priority: Vec<usize>,
}

impl TermOrder {
    pub fn new(m: usize, n: usize, y_order: YOrder) -> Self {
        TermOrder {
            m,
            n,
            has_t: false,
            y_order,
            y_priority: (0..m).collect(),
        }
    }

    /// Uses `priority` (greatest first) as the order of the y-variables.
    pub fn with_y_priority(mut self, priority: Vec<usize>) -> Result<Self> {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        if sorted != (0..self.m).collect::<Vec<_>>() {
            return Err(Error::InvalidSpec("y-priority must be a permutation of the y-variables".into()));
        }
        self.y_priority = priority;
        Ok(self)
    }

    /// The same order with an extra variable `t` above everything.
    pub fn eliminating_t(&self) -> Self {
        TermOrder {
            has_t: true,
            ..self.clone()
        }
    }

    pub fn has_t(&self) -> bool {
        self.has_t
    }

    pub fn y_order(&self) -> YOrder {
        self.y_order
    }

    pub fn y_priority(&self) -> &[usize] {
        &self.y_priority
    }

    pub fn num_y(&self) -> usize {
        self.m
    }

    pub fn num_x(&self) -> usize {
        self.n
    }

    /// Length of exponent vectors under this order.
    pub fn nvars(&self) -> usize {
        self.m + self.n + usize::from(self.has_t)
    }

    pub fn y_offset(&self) -> usize {
        usize::from(self.has_t)
    }

    pub fn x_offset(&self) -> usize {
        self.y_offset() + self.m
    }

    pub fn y_part<'a>(&self, a: &'a Monomial) -> &'a [u32] {
        &a.exponents()[self.y_offset()..self.x_offset()]
    }

    pub fn x_part<'a>(&self, a: &'a Monomial) -> &'a [u32] {
        &a.exponents()[self.x_offset()..]
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.has_t {
            let o = a.exp(0).cmp(&b.exp(0));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.cmp_y(self.y_part(a), self.y_part(b))
            .then_with(|| self.x_part(a).cmp(self.x_part(b)))
    }

    /// `<#` on y-exponent vectors.
    pub fn cmp_y(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.y_order {
            YOrder::Lex => {
                for &j in &self.y_priority {
                    let o = a[j].cmp(&b[j]);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            YOrder::DegRevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    for &j in self.y_priority.iter().rev() {
                        if a[j] != b[j] {
                            return b[j].cmp(&a[j]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_t {
            f.write_str("t-elimination, ")?;
        }
        match self.y_order {
            YOrder::Lex => f.write_str("y-lex")?,
            YOrder::DegRevLex => f.write_str("y-degrevlex")?,
        }
        let prio: Vec<String> = self.y_priority.iter().map(|j| format!("y{}", j + 1)).collect();
        write!(f, " [{}], then x-lex", prio.join(" > "))
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn mono(y: &[u32], x: &[u32]) -> Monomial {
        Monomial::new([y, x].concat())
    }

    #[test]
    fn y_block_dominates() {
        let o = TermOrder::new(2, 2, YOrder::Lex);
        // x1^5 y2 < y1
        assert_eq!(o.cmp(&mono(&[0, 1], &[5, 0]), &mono(&[1, 0], &[0, 0])), Ordering::Less);
        // equal y parts: lex on x
        assert_eq!(o.cmp(&mono(&[1, 0], &[0, 1]), &mono(&[1, 0], &[1, 0])), Ordering::Less);
    }

    #[test]
    fn revlex_on_y() {
        let o = TermOrder::new(6, 0, YOrder::DegRevLex);
        // y2 y5 > y1 y6 under revlex, the opposite of lex
        let a = [0, 1, 0, 0, 1, 0];
        let b = [1, 0, 0, 0, 0, 1];
        assert_eq!(o.cmp_y(&a, &b), Ordering::Greater);
        let l = TermOrder::new(6, 0, YOrder::Lex);
        assert_eq!(l.cmp_y(&a, &b), Ordering::Less);
    }

    #[test]
    fn custom_priority() {
        let o = TermOrder::new(2, 0, YOrder::Lex).with_y_priority(vec![1, 0]).unwrap();
        assert_eq!(o.cmp_y(&[1, 0], &[0, 1]), Ordering::Less);
        assert!(TermOrder::new(2, 0, YOrder::Lex).with_y_priority(vec![0, 0]).is_err());
    }

    #[test]
    fn two_case_definition_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for y_order in [YOrder::Lex, YOrder::DegRevLex] {
            let o = TermOrder::new(3, 3, y_order);
            for _ in 0..1000 {
                let ya: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                let xa: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                let yb: Vec<u32> = if rng.gen_bool(0.3) {
                    ya.clone()
                } else {
                    (0..3).map(|_| rng.gen_range(0..3)).collect()
                };
                let xb: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                let got = o.cmp(&mono(&ya, &xa), &mono(&yb, &xb));
                let expected = if ya != yb {
                    o.cmp_y(&ya, &yb)
                } else {
                    xa.cmp(&xb)
                };
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn elimination_puts_t_first() {
        let o = TermOrder::new(1, 1, YOrder::Lex).eliminating_t();
        let t_x = Monomial::new(vec![1, 0, 1]);
        let y = Monomial::new(vec![0, 5, 0]);
        assert_eq!(o.cmp(&t_x, &y), Ordering::Greater);
    }
}
