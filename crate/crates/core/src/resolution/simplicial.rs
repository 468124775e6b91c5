//! Finite simplicial complexes on at most 64 vertices, faces as bit sets.

use std::collections::BTreeSet;

use super::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    nverts: usize,
    /// All faces, closed under subsets. Empty for the void complex.
    faces: BTreeSet<u64>,
}

impl SimplicialComplex {
    /// The complex generated by `facets` (every subset of a facet is a face).
    pub fn from_facets(nverts: usize, facets: impl IntoIterator<Item = u64>) -> Self {
        assert!(nverts <= 64, "at most 64 vertices");
        let mut faces = BTreeSet::new();
        for f in maximal_sets(facets) {
            // enumerate all submasks of f
            let mut sub = f;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        SimplicialComplex { nverts, faces }
    }

    /// The void complex (no faces, not even the empty face).
    pub fn void(nverts: usize) -> Self {
        SimplicialComplex {
            nverts,
            faces: BTreeSet::new(),
        }
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn faces(&self) -> impl Iterator<Item = u64> + '_ {
        self.faces.iter().copied()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.faces.contains(&face)
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Dimension of the largest face; `-1` for `{∅}`, `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.faces
            .iter()
            .map(|f| f.count_ones() as isize - 1)
            .max()
    }

    /// Reduced homology ranks over `field`; entry `i` is the rank of `H̃_{i-1}`.
    ///
    /// The void complex has no homology at all and returns an empty list.
    pub fn reduced_homology(&self, field: Field) -> Vec<usize> {
        let Some(top) = self.dim() else {
            return Vec::new();
        };
        // faces[d + 1] holds the faces of dimension d, as sorted bit sets
        let mut by_dim: Vec<Vec<u64>> = vec![Vec::new(); (top + 2) as usize];
        for &f in &self.faces {
            by_dim[f.count_ones() as usize].push(f);
        }
        // rank of the boundary map from dimension d to d - 1, stored at index d + 1
        let mut ranks = vec![0usize; by_dim.len() + 1];
        for idx in 1..by_dim.len() {
            ranks[idx] = field.rank(&boundary_matrix(&by_dim[idx], &by_dim[idx - 1]));
        }
        (0..by_dim.len())
            .map(|idx| by_dim[idx].len() - ranks[idx] - ranks[idx + 1])
            .collect()
    }
}

/// Removes non-maximal sets.
fn maximal_sets(sets: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut sets: Vec<u64> = sets.into_iter().collect();
    sets.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    sets.dedup();
    let mut out: Vec<u64> = Vec::new();
    for s in sets {
        if !out.iter().any(|&m| s & m == s) {
            out.push(s);
        }
    }
    out
}

/// Boundary matrix with one row per face in `upper` and one column per face in `lower`.
fn boundary_matrix(upper: &[u64], lower: &[u64]) -> Vec<Vec<i64>> {
    upper
        .iter()
        .map(|&f| {
            let mut row = vec![0i64; lower.len()];
            let mut rest = f;
            let mut j = 0;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                let col = lower
                    .binary_search(&(f ^ bit))
                    .expect("complex is closed under subsets");
                row[col] = if j % 2 == 0 { 1 } else { -1 };
                j += 1;
            }
            row
        })
        .collect()
}
