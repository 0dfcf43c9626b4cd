//! Exhaustive enumeration of all racks of a given small order.
//!
//! A table satisfies Q2 iff every column is a permutation, and Q3 iff the
//! column map `b -> p_b` (where `p_b(a) = a*b`) satisfies the conjugation
//! law `p_{p_c(b)} = p_c p_b p_c^{-1}`. The search therefore assigns whole
//! columns (permutations) rather than single cells, propagating columns
//! forced by the conjugation law and backtracking on conflicts.

use super::{AlgebraError, RackTable};

const MAX_ORDER: usize = 4;

/// All rack tables of the given order, in lexicographic order of their
/// row-major entries. Supported for `1 <= n <= 4`.
pub fn enumerate_racks(n: usize) -> Result<Vec<RackTable>, AlgebraError> {
    if n == 0 || n > MAX_ORDER {
        return Err(AlgebraError::UnsupportedOrder { n, max: MAX_ORDER });
    }
    let perms = permutations_lex(n);
    let mut search = Search {
        n,
        perms,
        cols: vec![None; n],
        found: Vec::new(),
    };
    search.extend(0);
    let Search { perms, found, .. } = search;
    let mut tables: Vec<RackTable> = found
        .into_iter()
        .map(|cols| {
            let rows: Vec<Vec<usize>> = (0..n)
                .map(|a| (0..n).map(|b| perms[cols[b]][a]).collect())
                .collect();
            RackTable::new(n, rows).expect("enumerated table is well-formed")
        })
        .collect();
    tables.sort_by(|x, y| x.flat().cmp(y.flat()));
    Ok(tables)
}

struct Search {
    n: usize,
    perms: Vec<Vec<usize>>,
    cols: Vec<Option<usize>>,
    found: Vec<Vec<usize>>,
}

impl Search {
    /// Assigns every column from `from` upward, recursing over the choices
    /// for the first unassigned column.
    fn extend(&mut self, from: usize) {
        let next = (from..self.n).find(|&b| self.cols[b].is_none());
        let b = match next {
            Some(b) => b,
            None => {
                let cols: Vec<usize> = self.cols.iter().map(|c| c.unwrap()).collect();
                self.found.push(cols);
                return;
            }
        };
        for p in 0..self.perms.len() {
            let mut trail = Vec::new();
            if self.assign(b, p, &mut trail) {
                self.extend(from);
            }
            for undone in trail {
                self.cols[undone] = None;
            }
        }
    }

    /// Sets column `b` to permutation index `p` and closes under the
    /// conjugation law, recording every newly assigned column in `trail`.
    /// Returns false on conflict (trail still records what must be undone).
    fn assign(&mut self, b: usize, p: usize, trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![(b, p)];
        while let Some((b, p)) = queue.pop() {
            match self.cols[b] {
                Some(existing) if existing == p => continue,
                Some(_) => return false,
                None => {
                    self.cols[b] = Some(p);
                    trail.push(b);
                }
            }
            // Close under p_{p_c(x)} = p_c p_x p_c^{-1} for every pair of
            // assigned columns involving the new one.
            let assigned: Vec<usize> = (0..self.n).filter(|&i| self.cols[i].is_some()).collect();
            for &x in &assigned {
                for &c in &assigned {
                    if x != b && c != b {
                        continue;
                    }
                    let px = self.cols[x].unwrap();
                    let pc = self.cols[c].unwrap();
                    let target = self.perms[pc][x];
                    let required = self.conjugate(pc, px);
                    match self.cols[target] {
                        Some(existing) => {
                            if existing != required {
                                return false;
                            }
                        }
                        None => queue.push((target, required)),
                    }
                }
            }
        }
        true
    }

    /// Index of the permutation `pc ∘ px ∘ pc^{-1}`.
    fn conjugate(&self, pc: usize, px: usize) -> usize {
        let (c, x) = (&self.perms[pc], &self.perms[px]);
        let mut inv_c = vec![0; self.n];
        for (i, &v) in c.iter().enumerate() {
            inv_c[v] = i;
        }
        let composed: Vec<usize> = (0..self.n).map(|a| c[x[inv_c[a]]]).collect();
        self.perms
            .binary_search(&composed)
            .expect("composition of permutations is a permutation")
    }
}

/// All permutations of `0..n` in lexicographic order of one-line notation.
fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // Standard next-permutation step.
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}
