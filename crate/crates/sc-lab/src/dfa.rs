//! Complete deterministic finite automata.
//!
//! States and letters are dense indices; every letter carries a display name
//! (`"a"`, `"b"`, ...). The transition map is total by construction, so every
//! `Dfa` value is a complete DFA and state complexity is always counted over
//! complete automata.
//!
//! Minimization prunes to the breadth-first reachable part, refines the
//! partition Hopcroft-style, and renumbers the quotient in breadth-first
//! order with letters in index order. Equal languages over the same indexed
//! alphabet therefore minimize to identical values, and isomorphism checking
//! reduces to structural equality.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

/// The nonnegative representative of `i` modulo `p`:
/// min { j | j >= 0 and j ≡ i (mod p) }.
pub fn mod_index(i: i64, p: usize) -> usize {
    assert!(p > 0, "modulus must be positive");
    i.rem_euclid(p as i64) as usize
}

/// A word over an indexed alphabet, letters applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word repeated `times` times.
    pub fn repeated(&self, times: usize) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&self.letters);
        }
        Word { letters }
    }

    pub fn followed_by(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word { letters }
    }
}

/// A transformation of the state set: `q ↦ image[q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMap {
    pub image: Vec<usize>,
}

impl StateMap {
    pub fn identity(n: usize) -> Self {
        StateMap { image: (0..n).collect() }
    }

    pub fn apply(&self, q: usize) -> usize {
        self.image[q]
    }

    /// True iff the image is a bijection of the state set.
    pub fn is_permutation(&self) -> bool {
        let n = self.image.len();
        let mut seen = vec![false; n];
        for &q in &self.image {
            if q >= n || seen[q] {
                return false;
            }
            seen[q] = true;
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &q)| i == q)
    }

    /// Composition applying `self` first, then `next`.
    pub fn then(&self, next: &StateMap) -> StateMap {
        StateMap {
            image: self.image.iter().map(|&q| next.image[q]).collect(),
        }
    }

    /// Lengths of the cycles of a permutation.
    pub fn cycle_lengths(&self) -> Result<Vec<usize>> {
        if !self.is_permutation() {
            return Err(Error::NotPermutation);
        }
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut q = start;
            while !seen[q] {
                seen[q] = true;
                len += 1;
                q = self.image[q];
            }
            lengths.push(len);
        }
        Ok(lengths)
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// A complete DFA: total transition map, one initial state, a set of finals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    state_count: usize,
    initial: usize,
    finals: Vec<bool>,
    /// Row-major: `delta[q * alphabet_size + a]`.
    delta: Vec<usize>,
}

impl Dfa {
    /// Builds a DFA from per-state transition rows, validating completeness
    /// and ranges. The state count is the number of rows.
    pub fn new(
        alphabet: Vec<String>,
        initial: usize,
        finals: Vec<usize>,
        rows: Vec<Vec<usize>>,
    ) -> Result<Dfa> {
        let k = alphabet.len();
        let n = rows.len();
        if k == 0 {
            return Err(Error::InvalidDfa("alphabet is empty".into()));
        }
        let mut names = HashSet::new();
        for name in &alphabet {
            if name.is_empty() {
                return Err(Error::InvalidDfa("empty letter name".into()));
            }
            if !names.insert(name.as_str()) {
                return Err(Error::InvalidDfa(format!("duplicate letter name \"{name}\"")));
            }
        }
        if n == 0 {
            return Err(Error::InvalidDfa("no states".into()));
        }
        if initial >= n {
            return Err(Error::BadState { state: initial, count: n });
        }
        let mut final_flags = vec![false; n];
        for q in finals {
            if q >= n {
                return Err(Error::BadState { state: q, count: n });
            }
            final_flags[q] = true;
        }
        let mut delta = Vec::with_capacity(n * k);
        for (q, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidDfa(format!(
                    "state {q} has {} transitions, expected {k}",
                    row.len()
                )));
            }
            for &target in row {
                if target >= n {
                    return Err(Error::BadState { state: target, count: n });
                }
                delta.push(target);
            }
        }
        Ok(Dfa { alphabet, state_count: n, initial, finals: final_flags, delta })
    }

    /// Internal constructor for product builders that already hold flat,
    /// validated data.
    pub(crate) fn from_parts(
        alphabet: Vec<String>,
        state_count: usize,
        initial: usize,
        finals: Vec<bool>,
        delta: Vec<usize>,
    ) -> Dfa {
        debug_assert_eq!(finals.len(), state_count);
        debug_assert_eq!(delta.len(), state_count * alphabet.len());
        Dfa { alphabet, state_count, initial, finals, delta }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    /// Final states in increasing order.
    pub fn finals(&self) -> Vec<usize> {
        (0..self.state_count).filter(|&q| self.finals[q]).collect()
    }

    /// The transition target for one letter.
    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == name)
    }

    /// Parses a word of single-character letter names against this alphabet.
    pub fn word_from_str(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let name = ch.to_string();
            match self.letter_index(&name) {
                Some(a) => letters.push(a),
                None => {
                    return Err(Error::Parse(format!(
                        "letter \"{name}\" not in alphabet [{}]",
                        self.alphabet.join(",")
                    )))
                }
            }
        }
        Ok(Word { letters })
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        for &a in &w.letters {
            if a >= self.alphabet.len() {
                return Err(Error::BadLetter { letter: a, count: self.alphabet.len() });
            }
        }
        Ok(())
    }

    /// Extends the transition map to a word, applied left to right.
    pub fn step(&self, q: usize, w: &Word) -> Result<usize> {
        if q >= self.state_count {
            return Err(Error::BadState { state: q, count: self.state_count });
        }
        self.check_word(w)?;
        let mut state = q;
        for &a in &w.letters {
            state = self.next(state, a);
        }
        Ok(state)
    }

    /// The transformation `q ↦ q·a` induced by a single letter.
    pub fn letter_action(&self, a: usize) -> Result<StateMap> {
        if a >= self.alphabet.len() {
            return Err(Error::BadLetter { letter: a, count: self.alphabet.len() });
        }
        Ok(StateMap {
            image: (0..self.state_count).map(|q| self.next(q, a)).collect(),
        })
    }

    /// The transformation `q ↦ q·w` induced by a word.
    pub fn word_action(&self, w: &Word) -> Result<StateMap> {
        self.check_word(w)?;
        let mut map = StateMap::identity(self.state_count);
        for &a in &w.letters {
            for q in map.image.iter_mut() {
                *q = self.next(*q, a);
            }
        }
        Ok(map)
    }

    /// For a word inducing a permutation σ, returns `w^(N−1)` where N is the
    /// lcm of σ's cycle lengths; its action is σ⁻¹. The identity action
    /// yields the empty word.
    pub fn inverse_word(&self, w: &Word) -> Result<Word> {
        let action = self.word_action(w)?;
        let lengths = action.cycle_lengths()?;
        let order = lengths
            .iter()
            .fold(1u128, |acc, &len| {
                let len = len as u128;
                acc / gcd(acc, len) * len
            });
        let times = usize::try_from(order - 1).expect("permutation order too large");
        Ok(w.repeated(times))
    }

    /// Relabels letters: letter `a` of the result acts like letter `perm[a]`
    /// of `self` and takes its name.
    pub fn permute_letters(&self, perm: &[usize]) -> Result<Dfa> {
        let k = self.alphabet.len();
        let as_map = StateMap { image: perm.to_vec() };
        if perm.len() != k || !as_map.is_permutation() {
            return Err(Error::Parse(format!(
                "letter permutation must be a bijection of 0..{k}"
            )));
        }
        let alphabet = perm.iter().map(|&a| self.alphabet[a].clone()).collect();
        let mut delta = Vec::with_capacity(self.delta.len());
        for q in 0..self.state_count {
            for &a in perm {
                delta.push(self.next(q, a));
            }
        }
        Ok(Dfa {
            alphabet,
            state_count: self.state_count,
            initial: self.initial,
            finals: self.finals.clone(),
            delta,
        })
    }

    /// Reachable states in breadth-first discovery order (letters in index
    /// order).
    fn reachable_order(&self) -> Vec<usize> {
        let k = self.alphabet.len();
        let mut order = Vec::with_capacity(self.state_count);
        let mut seen = vec![false; self.state_count];
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for a in 0..k {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// The unique minimal complete DFA for this language, canonically
    /// numbered by breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfa {
        self.minimize_with_classes().0
    }

    /// Number of states of the minimal complete DFA.
    pub fn state_complexity(&self) -> usize {
        self.minimize().state_count
    }

    /// Minimizes and also reports, for every original state, the minimized
    /// state it maps to (`None` for unreachable states).
    pub fn minimize_with_classes(&self) -> (Dfa, Vec<Option<usize>>) {
        let k = self.alphabet.len();

        // Restrict to the reachable part, renumbered in BFS order.
        let order = self.reachable_order();
        let n = order.len();
        let mut renum = vec![usize::MAX; self.state_count];
        for (idx, &q) in order.iter().enumerate() {
            renum[q] = idx;
        }
        let mut rdelta = vec![0usize; n * k];
        let mut rfinals = vec![false; n];
        for (idx, &q) in order.iter().enumerate() {
            rfinals[idx] = self.finals[q];
            for a in 0..k {
                rdelta[idx * k + a] = renum[self.next(q, a)];
            }
        }

        let class_of = refine_partition(n, k, &rdelta, &rfinals);

        // Canonical numbering: BFS over the quotient from the initial class.
        let num_classes = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; num_classes];
        for q in 0..n {
            if rep[class_of[q]] == usize::MAX {
                rep[class_of[q]] = q;
            }
        }
        let mut canon = vec![usize::MAX; num_classes];
        let mut canon_rep = Vec::with_capacity(num_classes);
        let mut queue = VecDeque::new();
        canon[class_of[0]] = 0;
        canon_rep.push(rep[class_of[0]]);
        queue.push_back(class_of[0]);
        while let Some(c) = queue.pop_front() {
            for a in 0..k {
                let t = class_of[rdelta[rep[c] * k + a]];
                if canon[t] == usize::MAX {
                    canon[t] = canon_rep.len();
                    canon_rep.push(rep[t]);
                    queue.push_back(t);
                }
            }
        }
        debug_assert_eq!(canon_rep.len(), num_classes);

        let mut delta = Vec::with_capacity(num_classes * k);
        let mut finals = vec![false; num_classes];
        for (c, &r) in canon_rep.iter().enumerate() {
            finals[c] = rfinals[r];
            for a in 0..k {
                delta.push(canon[class_of[rdelta[r * k + a]]]);
            }
        }
        let min = Dfa {
            alphabet: self.alphabet.clone(),
            state_count: num_classes,
            initial: 0,
            finals,
            delta,
        };
        let classes = (0..self.state_count)
            .map(|q| {
                if renum[q] == usize::MAX {
                    None
                } else {
                    Some(canon[class_of[renum[q]]])
                }
            })
            .collect();
        (min, classes)
    }

    /// True iff the two automata have identical minimal canonical forms under
    /// index identity of letters; display names are ignored.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        if self.alphabet.len() != other.alphabet.len() {
            return false;
        }
        let a = self.minimize();
        let b = other.minimize();
        a.state_count == b.state_count && a.finals == b.finals && a.delta == b.delta
    }

    /// Language equality by emptiness of the symmetric difference, explored
    /// as a breadth-first pair walk. Letters correspond by index.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        if self.alphabet.len() != other.alphabet.len() {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.join(","),
                right: other.alphabet.join(","),
            });
        }
        let k = self.alphabet.len();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert((self.initial, other.initial));
        queue.push_back((self.initial, other.initial));
        while let Some((p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                return Ok(false);
            }
            for a in 0..k {
                let t = (self.next(p, a), other.next(q, a));
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        Ok(true)
    }
}

/// Hopcroft-style partition refinement on a reachable, renumbered automaton.
/// Returns the equivalence class of each state; class ids are arbitrary.
fn refine_partition(n: usize, k: usize, delta: &[usize], finals: &[bool]) -> Vec<usize> {
    // Inverse transitions in CSR layout: predecessors of q by a sit at
    // preds[off[q*k+a]..off[q*k+a+1]].
    let mut off = vec![0usize; n * k + 1];
    for q in 0..n {
        for a in 0..k {
            off[delta[q * k + a] * k + a + 1] += 1;
        }
    }
    for i in 0..n * k {
        off[i + 1] += off[i];
    }
    let mut fill = off.clone();
    let mut preds = vec![0usize; n * k];
    for q in 0..n {
        for a in 0..k {
            let slot = delta[q * k + a] * k + a;
            preds[fill[slot]] = q;
            fill[slot] += 1;
        }
    }

    let mut blocks = Blocks::new(n);
    let mut touched = Vec::new();
    for q in 0..n {
        if finals[q] {
            blocks.mark(q, &mut touched);
        }
    }
    touched.clear();
    blocks.split(0);

    let block_count = blocks.count();
    let mut in_queue = vec![false; block_count];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for b in 0..block_count {
        in_queue[b] = true;
        queue.push_back(b);
    }

    while let Some(splitter) = queue.pop_front() {
        in_queue[splitter] = false;
        let members: Vec<usize> = blocks.members(splitter).to_vec();
        for a in 0..k {
            touched.clear();
            for &q in &members {
                for &p in &preds[off[q * k + a]..off[q * k + a + 1]] {
                    blocks.mark(p, &mut touched);
                }
            }
            for &b in &touched {
                if let Some(nb) = blocks.split(b) {
                    in_queue.push(false);
                    let push = if in_queue[b] {
                        nb
                    } else if blocks.size(nb) <= blocks.size(b) {
                        nb
                    } else {
                        b
                    };
                    if !in_queue[push] {
                        in_queue[push] = true;
                        queue.push_back(push);
                    }
                } else {
                    blocks.clear_marks(b);
                }
            }
        }
    }

    (0..n).map(|q| blocks.block_of(q)).collect()
}

/// Refinable partition: states grouped contiguously per block, with a marked
/// prefix region per block so splits run in time proportional to the part
/// split off.
struct Blocks {
    elems: Vec<usize>,
    loc: Vec<usize>,
    blk: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    marks: Vec<usize>,
}

impl Blocks {
    fn new(n: usize) -> Self {
        Blocks {
            elems: (0..n).collect(),
            loc: (0..n).collect(),
            blk: vec![0; n],
            start: vec![0],
            end: vec![n],
            marks: vec![0],
        }
    }

    fn count(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn members(&self, b: usize) -> &[usize] {
        &self.elems[self.start[b]..self.end[b]]
    }

    fn block_of(&self, q: usize) -> usize {
        self.blk[q]
    }

    /// Moves `q` into the marked prefix of its block; records the block in
    /// `touched` on its first mark.
    fn mark(&mut self, q: usize, touched: &mut Vec<usize>) {
        let b = self.blk[q];
        let i = self.loc[q];
        let boundary = self.start[b] + self.marks[b];
        if i < boundary {
            return;
        }
        if self.marks[b] == 0 {
            touched.push(b);
        }
        self.elems.swap(i, boundary);
        self.loc[self.elems[i]] = i;
        self.loc[self.elems[boundary]] = boundary;
        self.marks[b] += 1;
    }

    fn clear_marks(&mut self, b: usize) {
        self.marks[b] = 0;
    }

    /// Splits the marked prefix of `b` off as a new block. Returns `None`
    /// (clearing marks) when the marked part is empty or all of `b`.
    fn split(&mut self, b: usize) -> Option<usize> {
        let m = self.marks[b];
        self.marks[b] = 0;
        if m == 0 || m == self.size(b) {
            return None;
        }
        let nb = self.start.len();
        self.start.push(self.start[b]);
        self.end.push(self.start[b] + m);
        self.marks.push(0);
        self.start[b] += m;
        for i in self.start[nb]..self.end[nb] {
            self.blk[self.elems[i]] = nb;
        }
        Some(nb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{brzozowski, BrzozowskiSpec, TransformRole};

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    /// X_n over single-character letter names with the given roles.
    fn xn(n: usize, letters: &[&str], roles: &[TransformRole]) -> Dfa {
        brzozowski(&BrzozowskiSpec {
            n,
            alphabet: names(letters),
            roles: roles.to_vec(),
        })
        .unwrap()
    }

    use TransformRole::{Contraction10, Cycle, Identity, Transposition01};

    #[test]
    fn mod_index_examples() {
        assert_eq!(mod_index(-1, 3), 2);
        assert_eq!(mod_index(7, 3), 1);
        assert_eq!(mod_index(0, 5), 0);
        assert_eq!(mod_index(3, 3), 0);
        assert_eq!(mod_index(-7, 5), 3);
    }

    #[test]
    fn step_through_a_contraction_letter() {
        // X_5(a,-,c;{b,d}): a the 5-cycle, c the contraction 1 -> 0.
        let d = xn(5, &["a", "b", "c", "d"], &[Cycle, Identity, Contraction10, Identity]);
        let w = d.word_from_str("c").unwrap();
        assert_eq!(d.step(1, &w).unwrap(), 0);
        assert_eq!(d.step(3, &w).unwrap(), 3);
    }

    #[test]
    fn step_empty_word_is_identity() {
        let d = xn(4, &["a", "b"], &[Cycle, Transposition01]);
        for q in 0..4 {
            assert_eq!(d.step(q, &Word::empty()).unwrap(), q);
        }
    }

    #[test]
    fn step_cycle_then_transposition() {
        let d = xn(4, &["a", "b"], &[Cycle, Transposition01]);
        let w = d.word_from_str("ab").unwrap();
        assert_eq!(d.step(0, &w).unwrap(), 0);
    }

    #[test]
    fn step_rejects_out_of_range() {
        let d = xn(3, &["a"], &[Cycle]);
        assert!(matches!(
            d.step(3, &Word::empty()),
            Err(Error::BadState { state: 3, count: 3 })
        ));
        assert!(matches!(
            d.step(0, &Word::new(vec![1])),
            Err(Error::BadLetter { letter: 1, count: 1 })
        ));
    }

    #[test]
    fn word_action_role_examples() {
        let cycle = xn(3, &["a", "b"], &[Cycle, Identity]);
        assert_eq!(
            cycle.word_action(&cycle.word_from_str("a").unwrap()).unwrap().image,
            vec![1, 2, 0]
        );
        let transp = xn(3, &["a", "b"], &[Cycle, Transposition01]);
        assert_eq!(
            transp.word_action(&transp.word_from_str("b").unwrap()).unwrap().image,
            vec![1, 0, 2]
        );
        let contr = xn(3, &["a", "b"], &[Cycle, Contraction10]);
        assert_eq!(
            contr.word_action(&contr.word_from_str("b").unwrap()).unwrap().image,
            vec![0, 0, 2]
        );
    }

    #[test]
    fn word_action_composes() {
        let d = xn(5, &["a", "b", "c"], &[Cycle, Transposition01, Contraction10]);
        let u = d.word_from_str("abc").unwrap();
        let v = d.word_from_str("cba").unwrap();
        let uv = u.followed_by(&v);
        assert_eq!(
            d.word_action(&uv).unwrap(),
            d.word_action(&u).unwrap().then(&d.word_action(&v).unwrap())
        );
    }

    #[test]
    fn is_permutation_examples() {
        assert!(StateMap { image: vec![1, 2, 0] }.is_permutation());
        assert!(!StateMap { image: vec![0, 0, 2] }.is_permutation());
        assert!(StateMap { image: vec![0, 1, 2] }.is_permutation());
    }

    #[test]
    fn inverse_word_of_cycle() {
        let d = xn(3, &["a", "b"], &[Cycle, Identity]);
        let w = d.word_from_str("a").unwrap();
        let inv = d.inverse_word(&w).unwrap();
        assert_eq!(inv, d.word_from_str("aa").unwrap());
        let composed = d.word_action(&w).unwrap().then(&d.word_action(&inv).unwrap());
        assert!(composed.is_identity());
    }

    #[test]
    fn inverse_word_of_identity_action_is_empty() {
        let d = xn(3, &["a", "b"], &[Cycle, Identity]);
        let w = d.word_from_str("b").unwrap();
        assert_eq!(d.inverse_word(&w).unwrap(), Word::empty());
    }

    #[test]
    fn inverse_word_of_involution() {
        let d = xn(4, &["a", "b"], &[Cycle, Transposition01]);
        let w = d.word_from_str("b").unwrap();
        assert_eq!(d.inverse_word(&w).unwrap(), w);
    }

    #[test]
    fn inverse_word_rejects_contraction() {
        let d = xn(3, &["a", "b"], &[Cycle, Contraction10]);
        let w = d.word_from_str("b").unwrap();
        assert!(matches!(d.inverse_word(&w), Err(Error::NotPermutation)));
    }

    #[test]
    fn minimize_collapses_universal_language() {
        let d = Dfa::new(
            names(&["a"]),
            0,
            vec![0, 1],
            vec![vec![1], vec![0]],
        )
        .unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 1);
        assert!(m.is_final(0));
    }

    #[test]
    fn minimize_is_idempotent() {
        let d = xn(5, &["a", "b", "c"], &[Cycle, Transposition01, Contraction10]);
        let once = d.minimize();
        assert_eq!(once, once.minimize());
    }

    #[test]
    fn minimize_drops_unreachable_states() {
        // States 2 and 3 are unreachable; 0 and 1 are distinguishable.
        let d = Dfa::new(
            names(&["a"]),
            0,
            vec![1, 3],
            vec![vec![1], vec![1], vec![3], vec![2]],
        )
        .unwrap();
        let (m, classes) = d.minimize_with_classes();
        assert_eq!(m.state_count(), 2);
        assert_eq!(classes[0], Some(0));
        assert_eq!(classes[1], Some(1));
        assert_eq!(classes[2], None);
        assert_eq!(classes[3], None);
    }

    #[test]
    fn state_complexity_of_brzozowski_automaton() {
        let d = xn(5, &["a", "b", "c", "d"], &[Cycle, Identity, Contraction10, Identity]);
        assert_eq!(d.state_complexity(), 5);
    }

    #[test]
    fn state_complexity_of_single_state() {
        let d = Dfa::new(names(&["a"]), 0, vec![], vec![vec![0]]).unwrap();
        assert_eq!(d.state_complexity(), 1);
    }

    #[test]
    fn minimize_preserves_language() {
        let d = xn(6, &["a", "b", "c"], &[Cycle, Transposition01, Contraction10]);
        assert!(d.equivalent(&d.minimize()).unwrap());
    }

    #[test]
    fn isomorphism_is_reflexive() {
        let d = xn(4, &["a", "b"], &[Cycle, Transposition01]);
        assert!(d.is_isomorphic(&d));
    }

    #[test]
    fn isomorphism_compares_letter_indices_not_names() {
        // Same index table, swapped display names: isomorphic.
        let d1 = xn(3, &["a", "b"], &[Cycle, Identity]);
        let d2 = xn(3, &["b", "a"], &[Cycle, Identity]);
        assert!(d1.is_isomorphic(&d2));
        // Cycle moved to the other index: tables differ, not isomorphic.
        let d3 = xn(3, &["a", "b"], &[Identity, Cycle]);
        assert!(!d1.is_isomorphic(&d3));
    }

    #[test]
    fn isomorphism_distinguishes_empty_from_universal() {
        let none = Dfa::new(names(&["a"]), 0, vec![], vec![vec![0]]).unwrap();
        let all = Dfa::new(names(&["a"]), 0, vec![0], vec![vec![0]]).unwrap();
        assert!(!none.is_isomorphic(&all));
    }

    #[test]
    fn equivalent_detects_difference() {
        let cycle3 = xn(3, &["a"], &[Cycle]);
        let cycle4 = xn(4, &["a"], &[Cycle]);
        assert!(!cycle3.equivalent(&cycle4).unwrap());
        assert!(cycle3.equivalent(&cycle3).unwrap());
    }

    #[test]
    fn permute_letters_roundtrip() {
        let d = xn(4, &["a", "b", "c"], &[Cycle, Transposition01, Contraction10]);
        let p = d.permute_letters(&[2, 0, 1]).unwrap();
        assert_eq!(p.alphabet(), &names(&["c", "a", "b"])[..]);
        assert_eq!(p.next(1, 0), d.next(1, 2));
        let back = p.permute_letters(&[1, 2, 0]).unwrap();
        assert_eq!(back, d);
        assert!(d.permute_letters(&[0, 0, 1]).is_err());
    }

    #[test]
    fn new_rejects_malformed_input() {
        assert!(Dfa::new(vec![], 0, vec![], vec![vec![]]).is_err());
        assert!(Dfa::new(names(&["a", "a"]), 0, vec![], vec![vec![0, 0]]).is_err());
        assert!(Dfa::new(names(&["a"]), 0, vec![], vec![]).is_err());
        assert!(Dfa::new(names(&["a"]), 1, vec![], vec![vec![0]]).is_err());
        assert!(Dfa::new(names(&["a"]), 0, vec![1], vec![vec![0]]).is_err());
        assert!(Dfa::new(names(&["a"]), 0, vec![], vec![vec![0, 0]]).is_err());
        assert!(Dfa::new(names(&["a"]), 0, vec![], vec![vec![1]]).is_err());
    }
}
