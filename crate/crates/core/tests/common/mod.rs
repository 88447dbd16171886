//! Brute-force oracles shared by the property and acceptance tests. None of
//! them calls into the normal-form or matching code under test.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

/// Union-find over dense indices.
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All words of length `<= max_len` over `n` letters, grouped into group
/// elements of the right-angled Coxeter group of `adj` by closing under
/// commutation of adjacent letters and deletion of `ss`.
///
/// Words are enumerated in ShortLex order, so `index` is monotone in it.
pub struct CoxeterClasses {
    pub n: usize,
    pub words: Vec<Vec<u8>>,
    dsu: Dsu,
    offsets: Vec<usize>,
}

impl CoxeterClasses {
    pub fn new(adj: &[Vec<bool>], max_len: usize) -> Self {
        let n = adj.len();
        let mut offsets = vec![0usize];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..max_len {
            if n == 0 {
                break;
            }
            offsets.push(words.len());
            let mut next = Vec::with_capacity(layer.len() * n);
            for w in &layer {
                for s in 0..n as u8 {
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        offsets.push(words.len());
        let mut classes = CoxeterClasses {
            n,
            dsu: Dsu::new(words.len()),
            words,
            offsets,
        };
        for i in 0..classes.words.len() {
            let w = classes.words[i].clone();
            for p in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[p], w[p + 1]);
                if a == b {
                    let mut shorter = w.clone();
                    shorter.drain(p..p + 2);
                    let j = classes.index(&shorter);
                    classes.dsu.union(i, j);
                } else if adj[a as usize][b as usize] {
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    let j = classes.index(&swapped);
                    classes.dsu.union(i, j);
                }
            }
        }
        classes
    }

    pub fn index(&self, w: &[u8]) -> usize {
        let base = self.offsets[w.len()];
        base + w.iter().fold(0usize, |acc, &c| acc * self.n + c as usize)
    }

    pub fn class(&mut self, i: usize) -> usize {
        self.dsu.find(i)
    }

    /// For every word, the ShortLex-least word of its class.
    pub fn shortlex_representatives(&mut self) -> Vec<Vec<u8>> {
        let mut best: Vec<Option<usize>> = vec![None; self.words.len()];
        for i in 0..self.words.len() {
            let r = self.class(i);
            if best[r].is_none() {
                // words are visited in ShortLex order
                best[r] = Some(i);
            }
        }
        (0..self.words.len())
            .map(|i| {
                let r = self.class(i);
                self.words[best[r].unwrap()].clone()
            })
            .collect()
    }

    /// Number of classes whose shortest word has each length `0..=max`.
    pub fn growth(&mut self, max: usize) -> Vec<usize> {
        let reps = self.shortlex_representatives();
        let distinct: BTreeSet<&Vec<u8>> = reps.iter().collect();
        let mut counts = vec![0; max + 1];
        for w in distinct {
            if w.len() <= max {
                counts[w.len()] += 1;
            }
        }
        counts
    }
}

/// Every labeled simple graph on `n` vertices, as adjacency matrices.
pub fn all_graphs(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let mut adj = vec![vec![false; n]; n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
            adj
        })
        .collect()
}

/// Independent vertex-group element for the graph-product oracle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(i64),
    Mod3(u8),
    /// Freely reduced word, `±g` for generator `g >= 1`.
    Free(Vec<i32>),
}

impl Elem {
    pub fn mul(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (Elem::Mod3(a), Elem::Mod3(b)) => Elem::Mod3((a + b) % 3),
            (Elem::Free(a), Elem::Free(b)) => {
                let mut out = a.clone();
                for &l in b {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                Elem::Free(out)
            }
            _ => panic!("mismatched element kinds"),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Elem::Int(0) | Elem::Mod3(0)) || matches!(self, Elem::Free(w) if w.is_empty())
    }

    /// Text accepted by the library parsers (`a`, `A`, `b`, `B` for words).
    pub fn text(&self) -> String {
        match self {
            Elem::Int(n) => n.to_string(),
            Elem::Mod3(r) => r.to_string(),
            Elem::Free(w) if w.is_empty() => "1".into(),
            Elem::Free(w) => w
                .iter()
                .map(|&l| {
                    let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                    if l > 0 {
                        c
                    } else {
                        c.to_ascii_uppercase()
                    }
                })
                .collect(),
        }
    }
}

pub type Syl = (usize, Elem);

/// All syllable sequences reachable from `w` by swapping adjacent syllables
/// at adjacent vertices and merging adjacent syllables at the same vertex.
/// Returns the reachable sequences of minimal length.
pub fn gp_reduced_forms(adj: &[Vec<bool>], w: &[Syl]) -> BTreeSet<Vec<Syl>> {
    let mut seen: HashSet<Vec<Syl>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        for p in 0..cur.len().saturating_sub(1) {
            let (a, b) = (&cur[p], &cur[p + 1]);
            let mut next = None;
            if a.0 == b.0 {
                let prod = a.1.mul(&b.1);
                let mut v = cur.clone();
                if prod.is_identity() {
                    v.drain(p..p + 2);
                } else {
                    v[p] = (a.0, prod);
                    v.remove(p + 1);
                }
                next = Some(v);
            } else if adj[a.0][b.0] {
                let mut v = cur.clone();
                v.swap(p, p + 1);
                next = Some(v);
            }
            if let Some(v) = next {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    let min = seen.iter().map(Vec::len).min().unwrap();
    seen.into_iter().filter(|v| v.len() == min).collect()
}

/// Lexicographically least assignment of factors to blocks (1-based block
/// numbers per factor) whose block label multisets equal `blocks`, found by
/// enumerating all `r^n` assignments.
pub fn least_block_assignment(a: &[&str], blocks: &[Vec<&str>]) -> Option<Vec<usize>> {
    let r = blocks.len();
    let n = a.len();
    if r == 0 || r > n {
        return None;
    }
    let target: Vec<Vec<&str>> = blocks
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort();
            b
        })
        .collect();
    let total = r.pow(n as u32);
    for code in 0..total {
        // most significant digit is factor 0, so codes run in lexicographic order
        let mut digits = vec![0usize; n];
        let mut rest = code;
        for d in digits.iter_mut().rev() {
            *d = rest % r;
            rest /= r;
        }
        let mut got: Vec<Vec<&str>> = vec![Vec::new(); r];
        for (i, &d) in digits.iter().enumerate() {
            got[d].push(a[i]);
        }
        for g in got.iter_mut() {
            g.sort();
        }
        if got == target {
            return Some(digits.into_iter().map(|d| d + 1).collect());
        }
    }
    None
}

/// `Σ_π q^{cr(π)}` over perfect matchings of `points` points, by recursion on
/// the partner of the first point.
pub fn pairing_sum(q: f64, points: usize) -> f64 {
    fn go(q: f64, open: &mut Vec<(usize, usize)>, free: &[usize]) -> f64 {
        let Some((&first, rest)) = free.split_first() else {
            let mut crossings = 0;
            for i in 0..open.len() {
                for j in 0..open.len() {
                    let (a, b) = open[i];
                    let (c, d) = open[j];
                    if a < c && c < b && b < d {
                        crossings += 1;
                    }
                }
            }
            return q.powi(crossings);
        };
        let mut total = 0.0;
        for i in 0..rest.len() {
            open.push((first, rest[i]));
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect();
            total += go(q, open, &remaining);
            open.pop();
        }
        total
    }
    if points % 2 == 1 {
        return 0.0;
    }
    let free: Vec<usize> = (0..points).collect();
    go(q, &mut Vec::new(), &free)
}

/// `binomial(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Minimal-length words reachable from `w` in the right-angled Coxeter group
/// of `adj` by commutations and deletions of `ss`.
pub fn coxeter_reduced_forms(adj: &[Vec<bool>], w: &[u8]) -> BTreeSet<Vec<u8>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        for p in 0..cur.len().saturating_sub(1) {
            let (a, b) = (cur[p], cur[p + 1]);
            let mut v = cur.clone();
            if a == b {
                v.drain(p..p + 2);
            } else if adj[a as usize][b as usize] {
                v.swap(p, p + 1);
            } else {
                continue;
            }
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    let min = seen.iter().map(Vec::len).min().unwrap();
    seen.into_iter().filter(|v| v.len() == min).collect()
}
