use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};
use crate::text::parse_ideal;

use super::poset::{hp_ideal, Poset, DEFAULT_POSET_IDEAL_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Target depth function `f(1), f(2), ...`; the last listed value repeats forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthFunctionSpec {
    pub direction: Direction,
    /// `f(0)`, used only to validate decreasing specs.
    pub f0: Option<usize>,
    pub values: Vec<usize>,
}

impl DepthFunctionSpec {
    pub fn increasing(values: Vec<usize>) -> Self {
        DepthFunctionSpec {
            direction: Direction::Increasing,
            f0: None,
            values,
        }
    }

    pub fn decreasing(f0: usize, values: Vec<usize>) -> Self {
        DepthFunctionSpec {
            direction: Direction::Decreasing,
            f0: Some(f0),
            values,
        }
    }

    /// `f(k)` for `k ≥ 1`.
    pub fn value(&self, k: usize) -> usize {
        assert!(k >= 1, "f is evaluated from k = 1");
        self.values[(k - 1).min(self.values.len() - 1)]
    }

    pub fn limit(&self) -> usize {
        *self.values.last().expect("nonempty values")
    }

    pub fn profile(&self, kmax: usize) -> Vec<usize> {
        (1..=kmax).map(|k| self.value(k)).collect()
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.values.is_empty() {
            Err(Error::InvalidSpec("the depth function has no values".into()))
        } else {
            Ok(())
        }
    }

    /// Layer sizes `a_k = f(k-1) - f(k)` of the ordinal sum realizing a decreasing `f`.
    pub fn layers(&self) -> Result<Vec<usize>> {
        self.require_nonempty()?;
        if self.direction != Direction::Decreasing {
            return Err(Error::InvalidSpec("layers are defined for decreasing specs".into()));
        }
        let f0 = self
            .f0
            .ok_or_else(|| Error::InvalidSpec("a decreasing spec needs f(0)".into()))?;
        let lim = self.limit();
        if f0 != 2 * lim + 1 {
            return Err(Error::InvalidSpec(format!(
                "f(0) = {f0} must equal 2 * lim f + 1 = {}",
                2 * lim + 1
            )));
        }
        let full: Vec<usize> = std::iter::once(f0).chain(self.values.iter().copied()).collect();
        if full.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpec("f must be decreasing".into()));
        }
        let diffs: Vec<usize> = full.windows(2).map(|w| w[0] - w[1]).collect();
        if diffs.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpec("the differences f(k-1) - f(k) must be decreasing".into()));
        }
        Ok(diffs.into_iter().take_while(|&a| a > 0).collect())
    }

    /// `(n, d, c_2..c_{d-1})` of the increasing construction.
    pub fn increasing_parameters(&self) -> Result<(usize, u32, Vec<usize>)> {
        self.require_nonempty()?;
        if self.direction != Direction::Increasing {
            return Err(Error::InvalidSpec("parameters are defined for increasing specs".into()));
        }
        if self.values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpec("f must be increasing".into()));
        }
        let n = self.limit();
        let k0 = self.values.iter().position(|&v| v == n).expect("limit is attained") + 1;
        let d = k0 + 1;
        if d < 3 {
            return Err(Error::InvalidSpec(
                "f must reach its limit at k >= 2 (stabilization index d - 1 with d >= 3)".into(),
            ));
        }
        // c[r - 2] = c_r = n - f(d - r) for r = 2..=d-1
        let c = (2..d).map(|r| n - self.value(d - r)).collect();
        Ok((n, d as u32, c))
    }
}

/// `H_P` for the ordinal sum of antichains of sizes `a_k = f(k-1) - f(k)`.
pub fn ideal_for_decreasing_f(spec: &DepthFunctionSpec) -> Result<(Poset, MonomialIdeal)> {
    let layers = spec.layers()?;
    let p = Poset::ordinal_sum(&layers)?;
    let ideal = hp_ideal(&p, DEFAULT_POSET_IDEAL_CAP)?;
    Ok((p, ideal))
}

/// Ideal in `x1, x2, y1..yn` with `depth S/I^k = f(k)` for bounded increasing `f`.
pub fn ideal_for_increasing_f(spec: &DepthFunctionSpec) -> Result<MonomialIdeal> {
    let (n, d, c) = spec.increasing_parameters()?;
    let names = ["x1".to_string(), "x2".to_string()]
        .into_iter()
        .chain((1..=n).map(|i| format!("y{i}")));
    let vars = Arc::new(VariableSet::new(names)?);
    let width = n + 2;
    let mono = |a: u32, b: u32, y: Option<usize>| {
        let mut e = vec![0u32; width];
        e[0] = a;
        e[1] = b;
        if let Some(i) = y {
            e[2 + i] = 1;
        }
        Monomial::new(e)
    };
    let mut gens = vec![
        mono(d + 1, 0, None),
        mono(d, 1, None),
        mono(1, d, None),
        mono(0, d + 1, None),
    ];
    for (idx, &cr) in c.iter().enumerate() {
        let r = idx as u32 + 2;
        for i in 0..cr {
            gens.push(mono(d - 1, r, Some(i)));
        }
    }
    MonomialIdeal::new(vars, gens)
}

/// The fixed ideal in `a..f` whose depth profile is `0, 1, 0, 2, 2`.
pub fn nonmonotone_example() -> MonomialIdeal {
    parse_ideal(NONMONOTONE_TEXT).expect("valid ideal text")
}

pub const NONMONOTONE_PROFILE: [usize; 5] = [0, 1, 0, 2, 2];

const NONMONOTONE_TEXT: &str = "vars: a b c d e f
a^6
a^5 b
a b^5
b^6
a^4 b^4 c
a^4 b^4 d
a^4 e^2 f^3
b^4 e^3 f^2
";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::write_ideal;

    #[test]
    fn decreasing_layers() {
        let spec = DepthFunctionSpec::decreasing(5, vec![3, 2]);
        assert_eq!(spec.layers().unwrap(), vec![2, 1]);
        assert_eq!(spec.profile(4), vec![3, 2, 2, 2]);
        let (p, i) = ideal_for_decreasing_f(&spec).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(i.nvars(), 6);
        // constant f = n - 1 gives an antichain
        let (p, _) = ideal_for_decreasing_f(&DepthFunctionSpec::decreasing(5, vec![2])).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(p.len(), 3);
        // all differences 1 gives a chain
        let (p, _) = ideal_for_decreasing_f(&DepthFunctionSpec::decreasing(5, vec![4, 3, 2])).unwrap();
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn decreasing_validation() {
        assert!(DepthFunctionSpec::decreasing(6, vec![3, 2]).layers().is_err());
        assert!(DepthFunctionSpec::decreasing(7, vec![6, 4, 3]).layers().is_err());
        assert!(DepthFunctionSpec::decreasing(5, vec![]).layers().is_err());
    }

    #[test]
    fn increasing_example() {
        let spec = DepthFunctionSpec::increasing(vec![0, 1, 2]);
        assert_eq!(spec.increasing_parameters().unwrap(), (2, 4, vec![1, 2]));
        let i = ideal_for_increasing_f(&spec).unwrap();
        let text = write_ideal(&i);
        for line in ["x1^5", "x1^4 x2", "x1 x2^4", "x2^5", "x1^3 x2^2 y1", "x1^3 x2^3 y2"] {
            assert!(text.lines().any(|l| l == line), "missing {line}");
        }
        // x1^3 x2^3 y1 is a multiple of x1^3 x2^2 y1
        assert_eq!(i.num_gens(), 6);
    }

    #[test]
    fn increasing_validation() {
        assert!(DepthFunctionSpec::increasing(vec![2, 2]).increasing_parameters().is_err());
        assert!(DepthFunctionSpec::increasing(vec![2, 1]).increasing_parameters().is_err());
        let (n, d, c) = DepthFunctionSpec::increasing(vec![1, 2]).increasing_parameters().unwrap();
        assert_eq!((n, d, c), (2, 3, vec![1]));
    }

    #[test]
    fn nonmonotone_has_eight_generators() {
        let i = nonmonotone_example();
        assert_eq!(i.num_gens(), 8);
        assert_eq!(i.nvars(), 6);
    }
}
