//! Finite models over fixed domains: Kripke models without accessibility,
//! relational structures, enumeration, classification and canonical forms.

use crate::error::{Error, Result};
use crate::syntax::{OneType, Vocabulary};
use itertools::Itertools;
use std::collections::BTreeSet;
use std::fmt;

/// Enumeration cap for `enumerate_kripke`: at most `2^24` models.
pub const KRIPKE_ENUM_CAP: usize = 24;
/// Permutation cap for canonical forms and automorphism counting.
pub const PERM_CAP: usize = 6;

/// A Kripke model over a unary vocabulary: one 1-type per world, no
/// accessibility relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KripkeModel {
    k: u8,
    types: Vec<OneType>,
}

impl KripkeModel {
    pub fn new(k: usize, types: Vec<OneType>) -> Result<Self> {
        if types.is_empty() {
            return Err(Error::InvalidInput("a model needs at least one world".into()));
        }
        if types.iter().any(|t| t.k() != k) {
            return Err(Error::VocabularyMismatch("world type width differs from k".into()));
        }
        Ok(Self { k: k as u8, types })
    }

    pub fn from_indices(k: usize, idx: &[usize]) -> Result<Self> {
        Self::new(k, idx.iter().map(|&i| OneType::from_index(k, i)).collect())
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn n(&self) -> usize {
        self.types.len()
    }

    /// 1-type of a world (0-based index).
    pub fn type_of(&self, world: usize) -> OneType {
        self.types[world]
    }

    pub fn worlds(&self) -> impl Iterator<Item = usize> {
        0..self.types.len()
    }

    /// Realized type set and per-type multiplicities.
    pub fn classify(&self) -> (TypeSet, TypeCountVector) {
        let mut counts = vec![0u32; 1 << self.k];
        for t in &self.types {
            counts[t.index()] += 1;
        }
        let vector = TypeCountVector { k: self.k, counts };
        (vector.support(), vector)
    }

    /// Parse the text form `n=3; w1:p1; w2:p1; w3:!p1` where every world
    /// lists its full literal set (comma-separated for k > 1).
    pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Self> {
        let k = vocab.prop_count();
        if k == 0 {
            return Err(Error::VocabularyMismatch("modal vocabulary required".into()));
        }
        let mut parts = text.split(';').map(str::trim);
        let head = parts
            .next()
            .ok_or_else(|| Error::InvalidInput("empty model text".into()))?;
        let n: usize = head
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::InvalidInput(format!("expected n=<count>, got '{head}'")))?;
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let mut types = vec![None; n];
        for part in parts.filter(|p| !p.is_empty()) {
            let (w, lits) = part
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("expected w<i>:<literals>, got '{part}'")))?;
            let wi: usize = w
                .trim()
                .strip_prefix('w')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidInput(format!("bad world name '{w}'")))?;
            if wi == 0 || wi > n {
                return Err(Error::InvalidInput(format!("world w{wi} out of range")));
            }
            let mut neg = vec![None; k];
            for lit in lits.split(',').map(str::trim) {
                let (name, positive) = match lit.strip_prefix('!') {
                    Some(rest) => (rest, false),
                    None => (lit, true),
                };
                let pi: usize = name
                    .strip_prefix('p')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::InvalidInput(format!("bad literal '{lit}'")))?;
                if pi == 0 || pi > k {
                    return Err(Error::InvalidInput(format!("unknown proposition p{pi}")));
                }
                if neg[pi - 1].replace(!positive).is_some() {
                    return Err(Error::InvalidInput(format!("p{pi} listed twice for w{wi}")));
                }
            }
            let mut idx = 0usize;
            for (i, bit) in neg.iter().enumerate() {
                match bit {
                    Some(true) => idx |= 1 << i,
                    Some(false) => {}
                    None => {
                        return Err(Error::InvalidInput(format!(
                            "w{wi} does not fix a polarity for p{}",
                            i + 1
                        )))
                    }
                }
            }
            types[wi - 1] = Some(OneType::from_index(k, idx));
        }
        let types: Result<Vec<OneType>> = types
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::InvalidInput(format!("missing world w{}", i + 1))))
            .collect();
        Self::new(k, types?)
    }

    pub fn render(&self) -> String {
        let mut out = format!("n={}", self.n());
        for (i, t) in self.types.iter().enumerate() {
            out.push_str(&format!("; w{}:{}", i + 1, t.render().replace('&', ",")));
        }
        out
    }
}

/// A pointed Kripke model `(M, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointedModel {
    pub model: KripkeModel,
    /// 0-based world index.
    pub point: usize,
}

impl PointedModel {
    pub fn new(model: KripkeModel, point: usize) -> Result<Self> {
        if point >= model.n() {
            return Err(Error::InvalidInput(format!(
                "point {} out of range for n={}",
                point + 1,
                model.n()
            )));
        }
        Ok(Self { model, point })
    }

    pub fn point_type(&self) -> OneType {
        self.model.type_of(self.point)
    }
}

/// All `(2^k)^n` Kripke models over the fixed domain, lexicographic by the
/// per-world type indices (world 1 most significant).
pub fn enumerate_kripke(k: usize, n: usize) -> Result<impl Iterator<Item = KripkeModel>> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidInput("k and n must be at least 1".into()));
    }
    if k * n > KRIPKE_ENUM_CAP {
        return Err(Error::CapExceeded(format!(
            "k*n = {} exceeds the enumeration cap {KRIPKE_ENUM_CAP}",
            k * n
        )));
    }
    let total = 1usize << (k * n);
    Ok((0..total).map(move |code| {
        let types = (0..n)
            .map(|w| OneType::from_index(k, (code >> ((n - 1 - w) * k)) & ((1 << k) - 1)))
            .collect();
        KripkeModel { k: k as u8, types }
    }))
}

/// Set of realized 1-types, as a bitmask over type indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeSet {
    k: u8,
    mask: u32,
}

impl TypeSet {
    pub fn new(k: usize, mask: u32) -> Self {
        debug_assert!(mask < (1u32 << (1 << k)));
        Self { k: k as u8, mask }
    }

    pub fn full(k: usize) -> Self {
        Self::new(k, (1u32 << (1usize << k)) - 1)
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, t: &OneType) -> bool {
        self.mask >> t.index() & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = OneType> + '_ {
        let k = self.k as usize;
        let mask = self.mask;
        (0..(1usize << k)).filter(move |i| mask >> i & 1 == 1).map(move |i| OneType::from_index(k, i))
    }

    /// Text form `{p1,!p1}`.
    pub fn render(&self) -> String {
        format!("{{{}}}", self.iter().map(|t| t.render()).join(","))
    }
}

/// Per-type multiplicities `[n_1,..,n_l]` with `l = 2^k`, in canonical type
/// order; identifies a GMLU equivalence class (an isomorphism class).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeCountVector {
    k: u8,
    counts: Vec<u32>,
}

impl TypeCountVector {
    pub fn new(k: usize, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != 1 << k {
            return Err(Error::InvalidInput(format!(
                "expected {} counts, got {}",
                1 << k,
                counts.len()
            )));
        }
        Ok(Self { k: k as u8, counts })
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, type_index: usize) -> u32 {
        self.counts[type_index]
    }

    pub fn n(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn support(&self) -> TypeSet {
        let mask = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(0u32, |m, (i, _)| m | (1 << i));
        TypeSet::new(self.k as usize, mask)
    }

    /// Indices of realized types.
    pub fn realized(&self) -> Vec<usize> {
        (0..self.counts.len()).filter(|&i| self.counts[i] > 0).collect()
    }

    /// Index of a type with the largest multiplicity (smallest index wins ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for i in 1..self.counts.len() {
            if self.counts[i] > self.counts[best] {
                best = i;
            }
        }
        best
    }

    pub fn max_count(&self) -> u32 {
        self.counts[self.argmax()]
    }

    /// A concrete member of the class: worlds listed in type order.
    pub fn representative(&self) -> KripkeModel {
        let mut types = Vec::with_capacity(self.n() as usize);
        for (i, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                types.push(OneType::from_index(self.k as usize, i));
            }
        }
        KripkeModel { k: self.k, types }
    }

    /// Text form `[2,1]`.
    pub fn render(&self) -> String {
        format!("[{}]", self.counts.iter().join(","))
    }

    pub fn parse(k: usize, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidInput(format!("expected [n1,..], got '{text}'")))?;
        let counts: std::result::Result<Vec<u32>, _> =
            inner.split(',').map(|s| s.trim().parse()).collect();
        Self::new(k, counts.map_err(|_| Error::InvalidInput(format!("bad counts '{text}'")))?)
    }
}

/// All count vectors summing to `n` over `2^k` types, ascending
/// lexicographic order.
pub fn compositions(k: usize, n: u32) -> Vec<TypeCountVector> {
    let l = 1usize << k;
    let mut out = Vec::new();
    let mut cur = vec![0u32; l];
    fn rec(cur: &mut Vec<u32>, pos: usize, rest: u32, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = rest;
            out.push(cur.clone());
            return;
        }
        for v in 0..=rest {
            cur[pos] = v;
            rec(cur, pos + 1, rest - v, out);
        }
    }
    let mut raw = Vec::new();
    rec(&mut cur, 0, n, &mut raw);
    for counts in raw {
        out.push(TypeCountVector { k: k as u8, counts });
    }
    out
}

/// A finite relational structure over the domain `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationalStructure {
    n: usize,
    /// Tuple sets parallel to the vocabulary's relation list, 0-based entries.
    relations: Vec<BTreeSet<Vec<usize>>>,
}

impl RelationalStructure {
    pub fn new(n: usize, relations: Vec<BTreeSet<Vec<usize>>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("domain must be nonempty".into()));
        }
        for rel in &relations {
            for t in rel {
                if t.iter().any(|&e| e >= n) {
                    return Err(Error::InvalidInput("tuple entry out of domain".into()));
                }
            }
        }
        Ok(Self { n, relations })
    }

    pub fn empty(n: usize, num_relations: usize) -> Result<Self> {
        Self::new(n, vec![BTreeSet::new(); num_relations])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relation(&self, rel: usize) -> &BTreeSet<Vec<usize>> {
        &self.relations[rel]
    }

    pub fn holds(&self, rel: usize, args: &[usize]) -> bool {
        self.relations[rel].contains(args)
    }

    pub fn insert(&mut self, rel: usize, tuple: Vec<usize>) -> Result<()> {
        if tuple.iter().any(|&e| e >= self.n) {
            return Err(Error::InvalidInput("tuple entry out of domain".into()));
        }
        self.relations[rel].insert(tuple);
        Ok(())
    }

    /// The image of the structure under a domain permutation.
    pub fn apply_perm(&self, perm: &[usize]) -> Self {
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|t| t.iter().map(|&e| perm[e]).collect::<Vec<_>>())
                    .collect()
            })
            .collect();
        Self { n: self.n, relations }
    }

    /// Lexicographically minimal isomorphic copy; equal for isomorphic
    /// structures, distinct otherwise.
    pub fn canonical_form(&self) -> Result<Self> {
        if self.n > PERM_CAP {
            return Err(Error::CapExceeded(format!(
                "canonical form needs n <= {PERM_CAP}, got {}",
                self.n
            )));
        }
        Ok((0..self.n)
            .permutations(self.n)
            .map(|perm| self.apply_perm(&perm))
            .min()
            .unwrap())
    }

    /// Order of the automorphism group under domain permutations.
    pub fn automorphism_count(&self) -> Result<u64> {
        if self.n > PERM_CAP {
            return Err(Error::CapExceeded(format!(
                "automorphism counting needs n <= {PERM_CAP}, got {}",
                self.n
            )));
        }
        Ok((0..self.n)
            .permutations(self.n)
            .filter(|perm| &self.apply_perm(perm) == self)
            .count() as u64)
    }

    pub fn is_rigid(&self) -> Result<bool> {
        Ok(self.automorphism_count()? == 1)
    }

    /// Parse the text form `n=3; R1={(1,2),(2,3)}` (1-based entries).
    pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Self> {
        let mut parts = text.split(';').map(str::trim);
        let head = parts
            .next()
            .ok_or_else(|| Error::InvalidInput("empty structure text".into()))?;
        let n: usize = head
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::InvalidInput(format!("expected n=<count>, got '{head}'")))?;
        let mut s = Self::empty(n, vocab.relations().len())?;
        for part in parts.filter(|p| !p.is_empty()) {
            let (name, body) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("expected R<i>={{..}}, got '{part}'")))?;
            let ri: usize = name
                .trim()
                .strip_prefix('R')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidInput(format!("bad relation name '{name}'")))?;
            if ri == 0 || ri > vocab.relations().len() {
                return Err(Error::InvalidInput(format!("unknown relation R{ri}")));
            }
            let arity = vocab.relation_arity(ri - 1).unwrap();
            let body = body
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| Error::InvalidInput(format!("expected {{..}} after '{name}='")))?;
            let body = body.trim();
            if body.is_empty() {
                continue;
            }
            for tup in body.split("),") {
                let tup = tup
                    .trim()
                    .trim_start_matches('(')
                    .trim_end_matches(')');
                let entries: std::result::Result<Vec<usize>, _> =
                    tup.split(',').map(|s| s.trim().parse::<usize>()).collect();
                let entries =
                    entries.map_err(|_| Error::InvalidInput(format!("bad tuple '({tup})'")))?;
                if entries.len() != arity {
                    return Err(Error::InvalidInput(format!(
                        "R{ri} expects arity {arity}, got ({tup})"
                    )));
                }
                if entries.iter().any(|&e| e == 0 || e > n) {
                    return Err(Error::InvalidInput(format!("tuple entry out of range in ({tup})")));
                }
                s.insert(ri - 1, entries.iter().map(|&e| e - 1).collect())?;
            }
        }
        Ok(s)
    }

    pub fn render(&self) -> String {
        let mut out = format!("n={}", self.n);
        for (i, rel) in self.relations.iter().enumerate() {
            out.push_str(&format!(
                "; R{}={{{}}}",
                i + 1,
                rel.iter()
                    .map(|t| format!("({})", t.iter().map(|e| e + 1).join(",")))
                    .join(",")
            ));
        }
        out
    }
}

impl fmt::Display for RelationalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// All structures over `{1..n}` for the vocabulary, enumerated by a bitmask
/// over the concatenated relation cells (ascending).
pub fn all_structures(
    vocab: &Vocabulary,
    n: usize,
) -> Result<impl Iterator<Item = RelationalStructure> + '_> {
    let cells = cell_list(vocab, n);
    if cells.len() > 24 {
        return Err(Error::CapExceeded(format!(
            "exhaustive structure enumeration needs at most 24 cells, got {}",
            cells.len()
        )));
    }
    let total = 1u64 << cells.len();
    let nrel = vocab.relations().len();
    Ok((0..total).map(move |code| {
        let mut s = RelationalStructure::empty(n, nrel).unwrap();
        for (bit, (rel, tuple)) in cells.iter().enumerate() {
            if code >> bit & 1 == 1 {
                s.relations[*rel].insert(tuple.clone());
            }
        }
        s
    }))
}

/// The concatenated cell list `(relation, tuple)` for a vocabulary over
/// `{1..n}`, in relation order then tuple lexicographic order.
pub fn cell_list(vocab: &Vocabulary, n: usize) -> Vec<(usize, Vec<usize>)> {
    let mut cells = Vec::new();
    for (ri, (_, arity)) in vocab.relations().iter().enumerate() {
        let mut tuple = vec![0usize; *arity];
        loop {
            cells.push((ri, tuple.clone()));
            let mut pos = *arity;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < n {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&e| e == 0) {
                break;
            }
        }
    }
    cells
}
