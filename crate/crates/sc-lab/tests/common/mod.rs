//! Independent oracles for the integration suites. Everything here is
//! written against the textbook definitions, not the library's algorithms,
//! so agreement is meaningful: a slow Moore minimizer, a word-enumeration
//! language model, random generators, and an exhaustive tableau census.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sc_lab::construct::{BoolOp, OpTree};
use sc_lab::dfa::Dfa;
use sc_lab::tableau::{saturate_union, Tableau};

/// Relabels classes by first occurrence and returns the class count.
fn normalize(class: &mut [usize]) -> usize {
    let mut ids: HashMap<usize, usize> = HashMap::new();
    for c in class.iter_mut() {
        let fresh = ids.len();
        *c = *ids.entry(*c).or_insert(fresh);
    }
    ids.len()
}

/// Moore's iterated signature refinement over all states: two states get
/// the same class exactly when they accept the same language.
pub fn moore_classes(d: &Dfa) -> Vec<usize> {
    let n = d.state_count();
    let k = d.alphabet_size();
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(d.is_final(q))).collect();
    let mut count = normalize(&mut class);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            for a in 0..k {
                sig.push(class[d.next(q, a)]);
            }
            let fresh = ids.len();
            next.push(*ids.entry(sig).or_insert(fresh));
        }
        let next_count = ids.len();
        if next_count == count {
            return class;
        }
        class = next;
        count = next_count;
    }
}

/// States reachable from the initial state.
pub fn reachable_states(d: &Dfa) -> Vec<usize> {
    let mut seen = vec![false; d.state_count()];
    let mut queue = vec![d.initial()];
    seen[d.initial()] = true;
    let mut at = 0;
    while at < queue.len() {
        let q = queue[at];
        at += 1;
        for a in 0..d.alphabet_size() {
            let t = d.next(q, a);
            if !seen[t] {
                seen[t] = true;
                queue.push(t);
            }
        }
    }
    queue
}

/// Minimal complete-DFA size by the Moore oracle: distinct language
/// classes among reachable states.
pub fn oracle_minimal_size(d: &Dfa) -> usize {
    let classes = moore_classes(d);
    let distinct: HashSet<usize> = reachable_states(d).iter().map(|&q| classes[q]).collect();
    distinct.len()
}

/// Index space of all words over k letters up to a length bound, ordered
/// by (length, lexicographic). Languages are membership vectors over that
/// space.
pub struct Words {
    k: usize,
    max_len: usize,
    /// `offsets[l]` is the index of the first word of length l.
    offsets: Vec<usize>,
    /// `pow[i]` = k^i.
    pow: Vec<usize>,
    total: usize,
}

impl Words {
    pub fn new(k: usize, max_len: usize) -> Words {
        assert!(k >= 1);
        let mut offsets = vec![0usize];
        let mut pow = vec![1usize];
        let mut total = 0;
        for l in 0..=max_len {
            total += pow[l];
            offsets.push(total);
            pow.push(pow[l] * k);
        }
        Words {
            k,
            max_len,
            offsets,
            pow,
            total,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// The language of a DFA as a membership vector, walking every word
    /// breadth-first so each entry costs one transition.
    pub fn language_of(&self, d: &Dfa) -> Vec<bool> {
        assert_eq!(d.alphabet_size(), self.k);
        let mut state = vec![0usize; self.total];
        let mut lang = vec![false; self.total];
        state[0] = d.initial();
        lang[0] = d.is_final(d.initial());
        for l in 0..self.max_len {
            let (block, next_block) = (self.offsets[l], self.offsets[l + 1]);
            for w in block..next_block {
                for a in 0..self.k {
                    let child = next_block + (w - block) * self.k + a;
                    let q = d.next(state[w], a);
                    state[child] = q;
                    lang[child] = d.is_final(q);
                }
            }
        }
        lang
    }

    /// Catenation by trying every split of every word.
    pub fn cat(&self, left: &[bool], right: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.total];
        for l in 0..=self.max_len {
            let block = self.offsets[l];
            for local in 0..self.pow[l] {
                let w = block + local;
                for split in 0..=l {
                    let prefix = self.offsets[split] + local / self.pow[l - split];
                    let suffix = self.offsets[l - split] + local % self.pow[l - split];
                    if left[prefix] && right[suffix] {
                        out[w] = true;
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn combine(&self, op: BoolOp, left: &[bool], right: &[bool]) -> Vec<bool> {
        left.iter()
            .zip(right)
            .map(|(&a, &b)| op.apply(a, b))
            .collect()
    }

    /// Evaluates an expression tree over operand languages.
    pub fn eval_tree(&self, tree: &OpTree, operands: &[Vec<bool>]) -> Vec<bool> {
        match tree {
            OpTree::Leaf(i) => operands[*i].clone(),
            OpTree::Cat(l, r) => self.cat(&self.eval_tree(l, operands), &self.eval_tree(r, operands)),
            OpTree::Bool(op, l, r) => {
                self.combine(*op, &self.eval_tree(l, operands), &self.eval_tree(r, operands))
            }
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    (rng.next_u64() % bound as u64) as usize
}

/// A uniformly random complete DFA with 1..=max_states states.
pub fn random_dfa(rng: &mut ChaCha8Rng, max_states: usize, alphabet: &[&str]) -> Dfa {
    let n = 1 + pick(rng, max_states);
    random_dfa_exact(rng, n, alphabet)
}

/// A uniformly random complete DFA with exactly n states.
pub fn random_dfa_exact(rng: &mut ChaCha8Rng, n: usize, alphabet: &[&str]) -> Dfa {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..alphabet.len()).map(|_| pick(rng, n)).collect())
        .collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.next_u64() & 1 == 1).collect();
    let initial = pick(rng, n);
    let names: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
    Dfa::new(names, initial, finals, rows).expect("random DFA is well formed")
}

/// A random tableau with each cell marked with probability 1/2.
pub fn random_tableau(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Tableau {
    let mut t = Tableau::new(rows, cols);
    for j in 0..rows {
        for k in 0..cols {
            if rng.next_u64() & 1 == 1 {
                t.mark(j, k);
            }
        }
    }
    t
}

/// Exhaustive union-saturation census: saturates every tableau on the grid
/// and counts distinct fixpoints, plus those containing the origin cell.
pub fn enumerate_union_classes(n: usize, p: usize) -> (u64, u64) {
    let bits = n * p;
    assert!(bits <= 20, "census is exponential in the grid size");
    let mut seen: HashSet<u32> = HashSet::new();
    let mut with_origin = 0u64;
    for mask in 0u32..(1 << bits) {
        let mut t = Tableau::new(n, p);
        for bit in 0..bits {
            if mask & (1 << bit) != 0 {
                t.mark(bit / p, bit % p);
            }
        }
        let sat = saturate_union(&t);
        let mut encoded = 0u32;
        for (j, k) in sat.cells() {
            encoded |= 1 << (j * p + k);
        }
        if seen.insert(encoded) && sat.marked(0, 0) {
            with_origin += 1;
        }
    }
    (seen.len() as u64, with_origin)
}

/// One-step-at-a-time xor saturation straight from the definition: find a
/// right triangle, mark its missing corner, repeat.
pub fn naive_saturate_xor(t: &Tableau) -> Tableau {
    let mut current = t.clone();
    loop {
        let triangles = sc_lab::tableau::find_right_triangles(&current);
        match triangles.first() {
            None => return current,
            Some(tri) => current.mark(tri.missing.0, tri.missing.1),
        }
    }
}
