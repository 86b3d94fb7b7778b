//! Table automata over an abstract symbol range `0..nsym`.
//!
//! The public automata use letter bits as symbols; the FO compiler widens the
//! symbol with one bit per variable track.

use std::collections::{HashMap, VecDeque};

use super::AutomataError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RawDfa {
    pub nsym: usize,
    pub initial: u32,
    pub accepting: Vec<bool>,
    /// `delta[q * nsym + s]`.
    pub delta: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RawNfa {
    pub nsym: usize,
    pub initial: Vec<u32>,
    pub accepting: Vec<bool>,
    /// `succ[q * nsym + s]`, sorted and deduplicated.
    pub succ: Vec<Vec<u32>>,
}

fn cap_check(what: &'static str, count: usize, cap: usize) -> Result<(), AutomataError> {
    if count > cap {
        Err(AutomataError::ResourceCap { what, count, cap })
    } else {
        Ok(())
    }
}

impl RawDfa {
    pub fn constant(nsym: usize, accept: bool) -> Self {
        RawDfa { nsym, initial: 0, accepting: vec![accept], delta: vec![0; nsym] }
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    #[inline]
    pub fn step(&self, q: u32, s: usize) -> u32 {
        self.delta[q as usize * self.nsym + s]
    }

    pub fn run(&self, word: impl IntoIterator<Item = usize>) -> u32 {
        word.into_iter().fold(self.initial, |q, s| self.step(q, s))
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.accepting.iter_mut().for_each(|a| *a = !*a);
        out
    }

    /// Reachable part of the synchronous product, accepting by `op`.
    pub fn product(&self, other: &RawDfa, op: impl Fn(bool, bool) -> bool, cap: usize) -> Result<RawDfa, AutomataError> {
        debug_assert_eq!(self.nsym, other.nsym);
        let nsym = self.nsym;
        let mut index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for s in 0..nsym {
                let next = (self.step(p, s), other.step(q, s));
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = pairs.len() as u32;
                        pairs.push(next);
                        index.insert(next, id);
                        cap_check("product states", pairs.len(), cap)?;
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| op(self.accepting[p as usize], other.accepting[q as usize]))
            .collect();
        Ok(RawDfa { nsym, initial: 0, accepting, delta })
    }

    /// Minimal DFA, numbered in breadth-first order from the initial state
    /// with symbols explored in increasing order. Two DFAs with the same
    /// language over the same symbols minimize to equal values.
    pub fn minimize(&self) -> RawDfa {
        let nsym = self.nsym;
        let n = self.states();
        let mut class: Vec<u32> = self.accepting.iter().map(|&a| a as u32).collect();
        let mut count = {
            let mut seen = [false; 2];
            class.iter().for_each(|&c| seen[c as usize] = true);
            seen.iter().filter(|&&b| b).count()
        };
        let mut sig = Vec::with_capacity(nsym + 1);
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next = vec![0u32; n];
            for q in 0..n {
                sig.clear();
                sig.push(class[q]);
                sig.extend((0..nsym).map(|s| class[self.delta[q * nsym + s] as usize]));
                let fresh = ids.len() as u32;
                next[q] = *ids.entry(sig.clone()).or_insert(fresh);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Canonical numbering of the reachable classes.
        let mut order: Vec<Option<u32>> = vec![None; count];
        let mut rep: Vec<usize> = vec![usize::MAX; count];
        for q in 0..n {
            let c = class[q] as usize;
            if rep[c] == usize::MAX {
                rep[c] = q;
            }
        }
        let start = class[self.initial as usize] as usize;
        order[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        let mut seq = vec![start];
        while let Some(c) = queue.pop_front() {
            for s in 0..nsym {
                let d = class[self.delta[rep[c] * nsym + s] as usize] as usize;
                if order[d].is_none() {
                    order[d] = Some(seq.len() as u32);
                    seq.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut delta = Vec::with_capacity(seq.len() * nsym);
        for &c in &seq {
            for s in 0..nsym {
                let d = class[self.delta[rep[c] * nsym + s] as usize] as usize;
                delta.push(order[d].expect("reachable"));
            }
        }
        let accepting = seq.iter().map(|&c| self.accepting[rep[c]]).collect();
        RawDfa { nsym, initial: 0, accepting, delta }
    }

    /// A shortest accepted symbol sequence; among shortest ones, the first
    /// found by breadth-first search with symbols in increasing order.
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let n = self.states();
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.initial as usize] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if self.accepting[q as usize] {
                let mut path = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur as usize] {
                    path.push(s);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for s in 0..self.nsym {
                let d = self.step(q, s);
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    parent[d as usize] = Some((q, s));
                    queue.push_back(d);
                }
            }
        }
        None
    }

    pub fn to_nfa(&self) -> RawNfa {
        RawNfa {
            nsym: self.nsym,
            initial: vec![self.initial],
            accepting: self.accepting.clone(),
            succ: self.delta.iter().map(|&d| vec![d]).collect(),
        }
    }
}

/// Subset construction driven by a successor callback, so that projections
/// can be determinized without materializing the intermediate NFA.
pub(crate) fn subset_construction(
    nsym: usize,
    mut initial: Vec<u32>,
    is_accepting: impl Fn(u32) -> bool,
    mut successors: impl FnMut(u32, usize, &mut Vec<u32>),
    cap: usize,
) -> Result<RawDfa, AutomataError> {
    initial.sort_unstable();
    initial.dedup();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut sets = vec![initial.clone()];
    index.insert(initial, 0);
    let mut delta = Vec::new();
    let mut buf = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        for s in 0..nsym {
            buf.clear();
            for &q in &sets[i] {
                successors(q, s, &mut buf);
            }
            buf.sort_unstable();
            buf.dedup();
            let id = match index.get(&buf) {
                Some(&id) => id,
                None => {
                    let id = sets.len() as u32;
                    sets.push(buf.clone());
                    index.insert(buf.clone(), id);
                    cap_check("subset states", sets.len(), cap)?;
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let accepting = sets.iter().map(|set| set.iter().any(|&q| is_accepting(q))).collect();
    Ok(RawDfa { nsym, initial: 0, accepting, delta })
}

impl RawNfa {
    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn successors(&self, q: u32, s: usize) -> &[u32] {
        &self.succ[q as usize * self.nsym + s]
    }

    pub fn determinize(&self, cap: usize) -> Result<RawDfa, AutomataError> {
        subset_construction(
            self.nsym,
            self.initial.clone(),
            |q| self.accepting[q as usize],
            |q, s, out| out.extend_from_slice(self.successors(q, s)),
            cap,
        )
    }

    pub fn accepts(&self, word: impl IntoIterator<Item = usize>) -> bool {
        let mut cur: Vec<u32> = self.initial.clone();
        let mut next = Vec::new();
        for s in word {
            next.clear();
            for &q in &cur {
                next.extend_from_slice(self.successors(q, s));
            }
            next.sort_unstable();
            next.dedup();
            std::mem::swap(&mut cur, &mut next);
        }
        cur.iter().any(|&q| self.accepting[q as usize])
    }

    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let n = self.states();
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &q in &self.initial {
            if !seen[q as usize] {
                seen[q as usize] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            if self.accepting[q as usize] {
                let mut path = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur as usize] {
                    path.push(s);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for s in 0..self.nsym {
                for &d in self.successors(q, s) {
                    if !seen[d as usize] {
                        seen[d as usize] = true;
                        parent[d as usize] = Some((q, s));
                        queue.push_back(d);
                    }
                }
            }
        }
        None
    }
}
