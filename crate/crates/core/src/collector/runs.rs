//! The word being collected, as a sequence of runs in an implicit treap.
//!
//! Every run carries the best collection site starting at it, which only
//! depends on the run and its right neighbour. Subtrees keep the smallest
//! lowest generator among their sites, so the leftmost site with the
//! smallest lowest generator is found by one descent, and a splice only has
//! to refresh the sites next to the rewritten window.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

pub(super) type Run = (usize, BigInt);

const NIL: u32 = u32::MAX;

/// Best occurrence starting at a run, ordered within the run by
/// `(lowest, rank)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) struct Site<K> {
    pub lowest: usize,
    pub rank: (bool, u8),
    pub kind: K,
}

struct Node<K> {
    run: Run,
    site: Option<Site<K>>,
    left: u32,
    right: u32,
    priority: u64,
    size: usize,
    /// Smallest `lowest` among sites in the subtree; `usize::MAX` for none.
    min_lowest: usize,
    letters: BigUint,
}

pub(super) struct Runs<K> {
    nodes: Vec<Node<K>>,
    free: Vec<u32>,
    root: u32,
    seed: u64,
}

impl<K: Copy> Runs<K> {
    /// `site(run, next)` gives the best site starting at `run`.
    pub fn new(runs: &[Run], site: &dyn Fn(&Run, Option<&Run>) -> Option<Site<K>>) -> Self {
        let mut seq = Runs {
            nodes: Vec::with_capacity(runs.len()),
            free: Vec::new(),
            root: NIL,
            seed: 0x9e37_79b9_7f4a_7c15,
        };
        seq.root = seq.build(runs, None, site);
        seq
    }

    pub fn len(&self) -> usize {
        self.size(self.root)
    }

    /// The `i`-th run.
    pub fn get(&self, i: usize) -> &Run {
        self.get_in(self.root, i)
    }

    /// Index and site of the leftmost run whose site has the smallest
    /// lowest generator.
    pub fn first_site(&self) -> Option<(usize, Site<K>)> {
        let target = self.min_lowest(self.root);
        if target == usize::MAX {
            return None;
        }
        let mut t = self.root;
        let mut before = 0;
        loop {
            let node = &self.nodes[t as usize];
            if self.min_lowest(node.left) == target {
                t = node.left;
                continue;
            }
            before += self.size(node.left);
            match node.site {
                Some(s) if s.lowest == target => return Some((before, s)),
                _ => {
                    before += 1;
                    t = node.right;
                }
            }
        }
    }

    /// Number of letters in runs `0..i`.
    pub fn letters_before(&self, i: usize) -> BigUint {
        let mut t = self.root;
        let mut i = i;
        let mut total = BigUint::default();
        while t != NIL {
            let node = &self.nodes[t as usize];
            let left = self.size(node.left);
            if i <= left {
                t = node.left;
            } else {
                total += self.letters(node.left);
                total += node.run.1.magnitude();
                i -= left + 1;
                t = node.right;
            }
        }
        total
    }

    /// Replaces runs `start..end` by `replacement` (merged and free of zero
    /// exponents), merging runs that become adjacent with equal generator
    /// and sign.
    pub fn splice(
        &mut self,
        start: usize,
        end: usize,
        replacement: &[Run],
        site: &dyn Fn(&Run, Option<&Run>) -> Option<Site<K>>,
    ) {
        let from = start.saturating_sub(1);
        let (before, rest) = self.split(self.root, from);
        let (old, mut after) = self.split(rest, end - from);
        let mut window: Vec<Run> = Vec::with_capacity(replacement.len() + 2);
        if start > 0 {
            window.push(self.get_in(old, 0).clone());
        }
        for run in replacement {
            push_merged(&mut window, run.clone());
        }
        if after != NIL {
            let first = self.get_in(after, 0);
            if window.last().is_some_and(|last| mergeable(last, first)) {
                let (head, tail) = self.split(after, 1);
                let run = self.nodes[head as usize].run.clone();
                self.release(head);
                push_merged(&mut window, run);
                after = tail;
            }
        }
        self.release(old);
        let next = (after != NIL).then(|| self.get_in(after, 0).clone());
        let middle = self.build(&window, next.as_ref(), site);
        let left = self.merge(before, middle);
        self.root = self.merge(left, after);
    }

    /// All runs in order.
    pub fn to_vec(&self) -> Vec<Run> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut t = self.root;
        while t != NIL || !stack.is_empty() {
            while t != NIL {
                stack.push(t);
                t = self.nodes[t as usize].left;
            }
            let top = stack.pop().expect("stack is non-empty");
            out.push(self.nodes[top as usize].run.clone());
            t = self.nodes[top as usize].right;
        }
        out
    }

    fn size(&self, t: u32) -> usize {
        if t == NIL {
            0
        } else {
            self.nodes[t as usize].size
        }
    }

    fn min_lowest(&self, t: u32) -> usize {
        if t == NIL {
            usize::MAX
        } else {
            self.nodes[t as usize].min_lowest
        }
    }

    fn letters(&self, t: u32) -> BigUint {
        if t == NIL {
            BigUint::default()
        } else {
            self.nodes[t as usize].letters.clone()
        }
    }

    /// The `i`-th run of the subtree at `t`.
    fn get_in(&self, t: u32, i: usize) -> &Run {
        let mut t = t;
        let mut i = i;
        loop {
            let node = &self.nodes[t as usize];
            let left = self.size(node.left);
            if i < left {
                t = node.left;
            } else if i == left {
                return &node.run;
            } else {
                i -= left + 1;
                t = node.right;
            }
        }
    }

    fn update(&mut self, t: u32) {
        let (left, right) = {
            let node = &self.nodes[t as usize];
            (node.left, node.right)
        };
        let size = self.size(left) + 1 + self.size(right);
        let own = self.nodes[t as usize].site.map_or(usize::MAX, |s| s.lowest);
        let min_lowest = own.min(self.min_lowest(left)).min(self.min_lowest(right));
        let mut letters = self.letters(left);
        letters += self.nodes[t as usize].run.1.magnitude();
        if right != NIL {
            letters += &self.nodes[right as usize].letters;
        }
        let node = &mut self.nodes[t as usize];
        node.size = size;
        node.min_lowest = min_lowest;
        node.letters = letters;
    }

    /// Splits off the first `k` runs.
    fn split(&mut self, t: u32, k: usize) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        let left = self.nodes[t as usize].left;
        let left_size = self.size(left);
        if k <= left_size {
            let (a, b) = self.split(left, k);
            self.nodes[t as usize].left = b;
            self.update(t);
            (a, t)
        } else {
            let right = self.nodes[t as usize].right;
            let (a, b) = self.split(right, k - left_size - 1);
            self.nodes[t as usize].right = a;
            self.update(t);
            (t, b)
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].priority > self.nodes[b as usize].priority {
            let right = self.nodes[a as usize].right;
            self.nodes[a as usize].right = self.merge(right, b);
            self.update(a);
            a
        } else {
            let left = self.nodes[b as usize].left;
            self.nodes[b as usize].left = self.merge(a, left);
            self.update(b);
            b
        }
    }

    /// A treap holding `runs`, where the last run's right neighbour is
    /// `next`.
    fn build(
        &mut self,
        runs: &[Run],
        next: Option<&Run>,
        site: &dyn Fn(&Run, Option<&Run>) -> Option<Site<K>>,
    ) -> u32 {
        let mut root = NIL;
        for (i, run) in runs.iter().enumerate() {
            let s = site(run, runs.get(i + 1).or(next));
            let node = self.alloc(run.clone(), s);
            root = self.merge(root, node);
        }
        root
    }

    fn alloc(&mut self, run: Run, site: Option<Site<K>>) -> u32 {
        // splitmix64 over a counter gives the heap priorities.
        self.seed = self.seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.seed;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        let priority = z ^ (z >> 31);
        let node = Node {
            letters: run.1.magnitude().clone(),
            min_lowest: site.map_or(usize::MAX, |s| s.lowest),
            run,
            site,
            left: NIL,
            right: NIL,
            priority,
            size: 1,
        };
        match self.free.pop() {
            Some(t) => {
                self.nodes[t as usize] = node;
                t
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    fn release(&mut self, t: u32) {
        let mut stack = vec![t];
        while let Some(t) = stack.pop() {
            if t == NIL {
                continue;
            }
            let node = &self.nodes[t as usize];
            stack.push(node.left);
            stack.push(node.right);
            self.free.push(t);
        }
    }
}

fn mergeable(a: &Run, b: &Run) -> bool {
    a.0 == b.0 && a.1.is_positive() == b.1.is_positive()
}

fn push_merged(window: &mut Vec<Run>, run: Run) {
    match window.last_mut() {
        Some(last) if mergeable(last, &run) => last.1 += run.1,
        _ => window.push(run),
    }
}
