//! Exhaustive enumeration of syntax trees by size.
//!
//! The enumerator is generic in the node payload so callers can carry extra
//! data (truth tables, ranks) alongside each tree and prune with `None`.
//! Trees of size `< max_size` are kept in memory; the largest size is streamed.

use super::fo::{BinaryPredicate, FoFormula, Var};
use super::tl::{TlFormula, TlOp};

/// Node builders for [`enumerate_trees`].
pub struct TreeGrammar<T, U, B>
where
    U: Fn(usize, &T) -> Option<T>,
    B: Fn(usize, &T, &T) -> Option<T>,
{
    pub leaves: Vec<T>,
    pub unary_ops: usize,
    pub binary_ops: usize,
    pub unary: U,
    pub binary: B,
}

/// Calls `visit(tree, size)` for every tree of size `1..=max_size`, in order of
/// increasing size. Within a size the order is deterministic.
pub fn enumerate_trees<T, U, B>(grammar: &TreeGrammar<T, U, B>, max_size: usize, mut visit: impl FnMut(&T, usize))
where
    T: Clone,
    U: Fn(usize, &T) -> Option<T>,
    B: Fn(usize, &T, &T) -> Option<T>,
{
    if max_size == 0 {
        return;
    }
    let mut levels: Vec<Vec<T>> = vec![Vec::new()];
    for size in 1..=max_size {
        let keep = size < max_size;
        let mut level = Vec::new();
        let mut emit = |t: T| {
            visit(&t, size);
            if keep {
                level.push(t);
            }
        };
        if size == 1 {
            for l in &grammar.leaves {
                emit(l.clone());
            }
        } else {
            for op in 0..grammar.unary_ops {
                for c in &levels[size - 1] {
                    if let Some(t) = (grammar.unary)(op, c) {
                        emit(t);
                    }
                }
            }
            for op in 0..grammar.binary_ops {
                for ls in 1..size - 1 {
                    let rs = size - 1 - ls;
                    for l in &levels[ls] {
                        for r in &levels[rs] {
                            if let Some(t) = (grammar.binary)(op, l, r) {
                                emit(t);
                            }
                        }
                    }
                }
            }
        }
        levels.push(level);
    }
}

/// Atoms and operators for FO enumeration.
#[derive(Clone, Debug)]
pub struct FoEnumSpec {
    pub leaves: Vec<FoFormula>,
    /// Variables that quantifiers may bind.
    pub quantified: Vec<Var>,
    pub with_not: bool,
}

impl FoEnumSpec {
    /// `⊤`, `⊥`, every unary atom on every variable and every binary atom in
    /// `binaries` on every ordered pair of variables (distinct pairs only
    /// unless `same_var_atoms`).
    pub fn standard(preds: &[&str], vars: &[Var], binaries: &[BinaryPredicate], same_var_atoms: bool) -> Self {
        let mut leaves = vec![FoFormula::True, FoFormula::False];
        for v in vars {
            for p in preds {
                leaves.push(FoFormula::atom(p, v));
            }
        }
        for b in binaries {
            for l in vars {
                for r in vars {
                    if l != r || same_var_atoms {
                        leaves.push(FoFormula::bin(b.clone(), l, r));
                    }
                }
            }
        }
        FoEnumSpec { leaves, quantified: vars.to_vec(), with_not: false }
    }
}

/// Streams every FO formula of size `≤ max_size` built from `spec`:
/// leaves, `∧`, `∨`, `∃v`, `∀v` and optionally `¬`.
pub fn enumerate_fo(spec: &FoEnumSpec, max_size: usize, mut visit: impl FnMut(&FoFormula)) {
    let q = spec.quantified.len();
    let grammar = TreeGrammar {
        leaves: spec.leaves.clone(),
        unary_ops: 2 * q + usize::from(spec.with_not),
        binary_ops: 2,
        unary: |op: usize, c: &FoFormula| {
            Some(if op < q {
                FoFormula::exists(&spec.quantified[op], c.clone())
            } else if op < 2 * q {
                FoFormula::forall(&spec.quantified[op - q], c.clone())
            } else {
                FoFormula::not(c.clone())
            })
        },
        binary: |op: usize, l: &FoFormula, r: &FoFormula| {
            Some(if op == 0 { FoFormula::and(l.clone(), r.clone()) } else { FoFormula::or(l.clone(), r.clone()) })
        },
    };
    enumerate_trees(&grammar, max_size, |f, _| visit(f));
}

/// Streams every temporal formula of size `≤ max_size` over the given atoms
/// (plus `⊤`, `⊥`) and operators. Operators of arity 0 in `ops` are ignored.
pub fn enumerate_tl(atoms: &[&str], ops: &[TlOp], max_size: usize, mut visit: impl FnMut(&TlFormula)) {
    let mut leaves = vec![TlFormula::True, TlFormula::False];
    leaves.extend(atoms.iter().map(|a| TlFormula::atom(a)));
    let unary: Vec<TlOp> = ops.iter().copied().filter(|o| o.arity() == 1).collect();
    let binary: Vec<TlOp> = ops.iter().copied().filter(|o| o.arity() == 2).collect();
    let grammar = TreeGrammar {
        leaves,
        unary_ops: unary.len(),
        binary_ops: binary.len(),
        unary: |op: usize, c: &TlFormula| Some(TlFormula::from_op(unary[op], vec![c.clone()])),
        binary: |op: usize, l: &TlFormula, r: &TlFormula| {
            Some(TlFormula::from_op(binary[op], vec![l.clone(), r.clone()]))
        },
    };
    enumerate_trees(&grammar, max_size, |f, _| visit(f));
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Independent count: c(1)=L, c(s)=U·c(s−1)+B·Σ c(l)c(s−1−l).
    fn count(leaves: u64, unary: u64, binary: u64, size: usize) -> u64 {
        let mut c = vec![0u64; size + 1];
        for s in 1..=size {
            c[s] = if s == 1 {
                leaves
            } else {
                unary * c[s - 1] + binary * (1..s - 1).map(|l| c[l] * c[s - 1 - l]).sum::<u64>()
            };
        }
        c[1..].iter().sum()
    }

    #[test]
    fn tl_counts_match_recurrence_and_are_distinct() {
        let ops = [TlOp::X, TlOp::F, TlOp::G, TlOp::And, TlOp::Or, TlOp::U, TlOp::R];
        let mut seen = HashSet::new();
        let mut n = 0u64;
        enumerate_tl(&["a", "b"], &ops, 5, |f| {
            assert!(f.size() <= 5);
            seen.insert(f.clone());
            n += 1;
        });
        assert_eq!(n, count(4, 3, 4, 5));
        assert_eq!(seen.len() as u64, n);
    }

    #[test]
    fn fo_counts_match_recurrence() {
        let vars = [Var::new("x"), Var::new("y")];
        let spec = FoEnumSpec::standard(&["a"], &vars, &[BinaryPredicate::Lt, BinaryPredicate::Succ], false);
        assert_eq!(spec.leaves.len(), 2 + 2 + 4);
        let mut n = 0u64;
        enumerate_fo(&spec, 4, |f| {
            assert!(f.is_positive());
            n += 1;
        });
        assert_eq!(n, count(8, 4, 2, 4));
    }

    #[test]
    fn pruning_removes_subtrees() {
        // Only unary chains of depth ≤ 1 survive.
        let grammar = TreeGrammar {
            leaves: vec![0usize],
            unary_ops: 1,
            binary_ops: 0,
            unary: |_: usize, d: &usize| (*d < 1).then_some(d + 1),
            binary: |_: usize, _: &usize, _: &usize| None,
        };
        let mut got = Vec::new();
        enumerate_trees(&grammar, 4, |d, s| got.push((*d, s)));
        assert_eq!(got, vec![(0, 1), (1, 2)]);
    }
}
