//! Exact minimal formula sizes by bottom-up dynamic programming over
//! denotations, plus the explicit defining-formula constructions with
//! closed-form size accounting.
//!
//! The modal dynamic program works in two layers, mirroring the grammar
//! split: a propositional table (minimal formula per set of 1-types) feeds
//! graded modal atoms, which binary connectives then combine. Denotations
//! are bitsets over the class universe, so equal-denotation formulas share
//! one table entry and the first assignment by ascending size is minimal.

use crate::error::{Error, Result};
use crate::model::{TypeCountVector, TypeSet};
use crate::semantics::{Denotation, FoUniverse, GmluUniverse, MluUniverse};
use crate::syntax::{dual_negate, free_vars, size, type_formula, Formula, OneType, Vocabulary};
use std::collections::HashMap;

/// Widest class universe the dense table accepts (bit index fits `u32`).
pub const DENSE_WIDTH_CAP: usize = 20;

/// Options for the dynamic program.
#[derive(Debug, Clone, Copy, Default)]
pub struct DpOptions {
    /// Skip tautological/unsatisfiable entries. Off by default: constants
    /// are legal table entries and the verification slow path wants them.
    pub prune_constants: bool,
}

// ---------------------------------------------------------------------------
// Propositional sublayer
// ---------------------------------------------------------------------------

/// Minimal propositional NNF formula for every subset of the `2^k` types;
/// indexed by type-subset mask. Every subset is reachable from literals via
/// unions and intersections, so all entries are present.
pub fn prop_min_sizes(k: usize) -> Vec<(u64, Formula)> {
    assert!(k >= 1 && k <= 3, "propositional table supports k <= 3");
    let width = 1usize << (1usize << k);
    let mut best: Vec<Option<(u64, Formula)>> = vec![None; width];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    // literal seeds
    let mut seed = |mask: usize, f: Formula, best: &mut Vec<Option<(u64, Formula)>>| {
        if best[mask].is_none() {
            best[mask] = Some((1, f));
        }
    };
    let mut lit_masks = Vec::new();
    for prop in 0..k {
        for positive in [true, false] {
            let mask = OneType::all(k)
                .filter(|t| t.satisfies(prop) == positive)
                .fold(0usize, |m, t| m | (1 << t.index()));
            lit_masks.push(mask);
            seed(mask, Formula::lit(prop, positive), &mut best);
        }
    }
    frontier.push((0..width).filter(|&m| best[m].is_some()).collect());
    let mut assigned = frontier[1].len();
    let mut s = 1u64;
    while assigned < width {
        s += 1;
        let mut new_entries: Vec<(usize, u64, Formula)> = Vec::new();
        for s1 in 1..s.saturating_sub(1) {
            let s2 = s - 1 - s1;
            if s2 < s1 {
                break;
            }
            if s1 as usize >= frontier.len() || s2 as usize >= frontier.len() {
                continue;
            }
            for &m1 in &frontier[s1 as usize] {
                for &m2 in &frontier[s2 as usize] {
                    for (mask, and) in [(m1 & m2, true), (m1 | m2, false)] {
                        if best[mask].is_none()
                            && !new_entries.iter().any(|(m, _, _)| *m == mask)
                        {
                            let l = best[m1].as_ref().unwrap().1.clone();
                            let r = best[m2].as_ref().unwrap().1.clone();
                            let f = if and { Formula::and(l, r) } else { Formula::or(l, r) };
                            new_entries.push((mask, s, f));
                        }
                    }
                }
            }
        }
        let mut stratum = Vec::new();
        for (mask, sz, f) in new_entries {
            best[mask] = Some((sz, f));
            stratum.push(mask);
            assigned += 1;
        }
        frontier.push(stratum);
    }
    best.into_iter().map(Option::unwrap).collect()
}

// ---------------------------------------------------------------------------
// Dense modal dynamic program
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum Wit {
    None,
    /// Graded modal atom over a propositional body given by its type mask.
    Atom { dia: bool, grade: u32, prop_mask: u32 },
    Bin { and: bool, left: u32, right: u32 },
}

/// The frontier table of the dense dynamic program: minimal size and a
/// witness per denotation, discovered in ascending size strata.
pub struct SizeTable {
    width: usize,
    prop: Vec<(u64, Formula)>,
    best: Vec<u32>,
    wit: Vec<Wit>,
    /// denotations first assigned at each size
    frontier: Vec<Vec<u32>>,
    atoms: Vec<(u64, u32, Wit)>,
    opts: DpOptions,
    full_mask: u32,
    assigned: usize,
}

impl SizeTable {
    fn new(width: usize, prop: Vec<(u64, Formula)>, atoms: Vec<(u64, u32, Wit)>, opts: DpOptions) -> Result<Self> {
        if width > DENSE_WIDTH_CAP {
            return Err(Error::CapExceeded(format!(
                "universe width {width} exceeds the dense table cap {DENSE_WIDTH_CAP}"
            )));
        }
        let cells = 1usize << width;
        Ok(Self {
            width,
            prop,
            best: vec![u32::MAX; cells],
            wit: vec![Wit::None; cells],
            frontier: vec![Vec::new()],
            atoms,
            opts,
            full_mask: if width == 32 { u32::MAX } else { (1u32 << width) - 1 },
            assigned: 0,
        })
    }

    fn try_insert(&mut self, den: u32, s: u64, w: Wit, stratum: &mut Vec<u32>) {
        if self.opts.prune_constants && (den == 0 || den == self.full_mask) {
            return;
        }
        if self.best[den as usize] == u32::MAX {
            self.best[den as usize] = s as u32;
            self.wit[den as usize] = w;
            stratum.push(den);
            self.assigned += 1;
        }
    }

    /// Grow the table one size stratum at a time up to `budget`; after each
    /// stratum, `stop(size, newly assigned)` may end the run early.
    fn run<F: FnMut(u64, &[u32]) -> bool>(&mut self, budget: u64, mut stop: F) {
        let cells = 1usize << self.width;
        for s in 1..=budget {
            let mut stratum = Vec::new();
            for (cost, den, w) in self.atoms.clone() {
                if cost == s {
                    self.try_insert(den, s, w, &mut stratum);
                }
            }
            if s >= 3 {
                // conjunction and disjunction commute, so s1 <= s2 covers all pairs
                for s1 in 1..=(s - 1) / 2 {
                    let s2 = s - 1 - s1;
                    if s2 as usize >= self.frontier.len() {
                        continue;
                    }
                    let f1 = std::mem::take(&mut self.frontier[s1 as usize]);
                    let f2 = if s1 == s2 {
                        f1.clone()
                    } else {
                        std::mem::take(&mut self.frontier[s2 as usize])
                    };
                    for &d1 in &f1 {
                        for &d2 in &f2 {
                            self.try_insert(d1 & d2, s, Wit::Bin { and: true, left: d1, right: d2 }, &mut stratum);
                            self.try_insert(d1 | d2, s, Wit::Bin { and: false, left: d1, right: d2 }, &mut stratum);
                        }
                    }
                    self.frontier[s1 as usize] = f1;
                    if s1 != s2 {
                        self.frontier[s2 as usize] = f2;
                    }
                }
            }
            self.frontier.push(stratum);
            if stop(s, self.frontier.last().unwrap()) || self.assigned == cells {
                return;
            }
        }
    }

    fn size_of(&self, den: u32) -> Option<u64> {
        let s = self.best[den as usize];
        (s != u32::MAX).then_some(u64::from(s))
    }

    fn witness_of(&self, den: u32) -> Option<Formula> {
        self.size_of(den)?;
        Some(self.rebuild(den))
    }

    fn rebuild(&self, den: u32) -> Formula {
        match self.wit[den as usize] {
            Wit::None => unreachable!("witness requested for unassigned denotation"),
            Wit::Atom { dia, grade, prop_mask } => {
                let body = self.prop[prop_mask as usize].1.clone();
                if dia {
                    Formula::dia(grade, body)
                } else {
                    Formula::boxm(grade, body)
                }
            }
            Wit::Bin { and, left, right } => {
                let l = self.rebuild(left);
                let r = self.rebuild(right);
                if and {
                    Formula::and(l, r)
                } else {
                    Formula::or(l, r)
                }
            }
        }
    }
}

fn den_to_mask(d: &Denotation) -> u32 {
    debug_assert!(d.width() <= DENSE_WIDTH_CAP);
    d.as_u64() as u32
}

/// Modal atoms for the MLU universe: grade-1 modalities over every
/// propositional body. A class satisfies `<1>psi` iff it realizes a type of
/// the body, and `[1]psi` iff all its types are in the body.
fn mlu_atoms(univ: &MluUniverse, prop: &[(u64, Formula)]) -> Vec<(u64, u32, Wit)> {
    let k = univ.k();
    let mut atoms = Vec::new();
    for (pm, (psize, _)) in prop.iter().enumerate() {
        let mut dia_bits = 0u32;
        let mut box_bits = 0u32;
        for (ci, ts) in univ.classes().iter().enumerate() {
            let class_mask = ts.mask() as usize;
            if class_mask & pm != 0 {
                dia_bits |= 1 << ci;
            }
            if class_mask & !pm & ((1 << (1 << k)) - 1) == 0 {
                box_bits |= 1 << ci;
            }
        }
        atoms.push((psize + 1, dia_bits, Wit::Atom { dia: true, grade: 1, prop_mask: pm as u32 }));
        atoms.push((psize + 1, box_bits, Wit::Atom { dia: false, grade: 1, prop_mask: pm as u32 }));
    }
    atoms.sort_by_key(|(c, _, _)| *c);
    atoms
}

/// Graded modal atoms for the GMLU universe, grades `1..=n+1`. A class
/// satisfies `<d>psi` iff at least `d` of its points land in the body, and
/// `[d]psi` iff fewer than `d` land outside it.
fn gmlu_atoms(univ: &GmluUniverse, prop: &[(u64, Formula)]) -> Vec<(u64, u32, Wit)> {
    let n = univ.n();
    let mut atoms = Vec::new();
    for (pm, (psize, _)) in prop.iter().enumerate() {
        // per-class point counts inside the body
        let inside: Vec<u32> = univ
            .classes()
            .iter()
            .map(|cv| {
                cv.counts()
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| pm >> t & 1 == 1)
                    .map(|(_, &c)| c)
                    .sum()
            })
            .collect();
        for d in 1..=n + 1 {
            let mut dia_bits = 0u32;
            let mut box_bits = 0u32;
            for (ci, &ins) in inside.iter().enumerate() {
                if ins >= d {
                    dia_bits |= 1 << ci;
                }
                if n - ins < d {
                    box_bits |= 1 << ci;
                }
            }
            let cost = psize + u64::from(d);
            atoms.push((cost, dia_bits, Wit::Atom { dia: true, grade: d, prop_mask: pm as u32 }));
            atoms.push((cost, box_bits, Wit::Atom { dia: false, grade: d, prop_mask: pm as u32 }));
        }
    }
    atoms.sort_by_key(|(c, _, _)| *c);
    atoms
}

fn mlu_table(k: usize, n: usize, opts: DpOptions) -> Result<(MluUniverse, SizeTable)> {
    if k > 2 {
        return Err(Error::CapExceeded("MLU minimization supports k <= 2".into()));
    }
    let univ = MluUniverse::new(k, n)?;
    let prop = prop_min_sizes(k);
    let atoms = mlu_atoms(&univ, &prop);
    let table = SizeTable::new(univ.width(), prop, atoms, opts)?;
    Ok((univ, table))
}

fn gmlu_table(k: usize, n: u32, opts: DpOptions) -> Result<(GmluUniverse, SizeTable)> {
    let univ = GmluUniverse::new(k, n)?;
    if univ.width() > DENSE_WIDTH_CAP {
        return Err(Error::CapExceeded(format!(
            "GMLU universe width {} exceeds the dense table cap",
            univ.width()
        )));
    }
    let prop = prop_min_sizes(k);
    let atoms = gmlu_atoms(&univ, &prop);
    let table = SizeTable::new(univ.width(), prop, atoms, opts)?;
    Ok((univ, table))
}

fn min_size_dense(mut table: SizeTable, target: u32, budget: u64) -> Option<(u64, Formula)> {
    table.run(budget, |_, stratum| stratum.contains(&target));
    let s = table.size_of(target)?;
    Some((s, table.witness_of(target).unwrap()))
}

/// Exact minimum size of an MLU formula with the given denotation over the
/// `Mod_n` MLU universe, or `None` within the budget.
pub fn min_size_mlu(
    k: usize,
    n: usize,
    target: &Denotation,
    budget: u64,
) -> Result<Option<(u64, Formula)>> {
    min_size_mlu_opt(k, n, target, budget, DpOptions::default())
}

pub fn min_size_mlu_opt(
    k: usize,
    n: usize,
    target: &Denotation,
    budget: u64,
    opts: DpOptions,
) -> Result<Option<(u64, Formula)>> {
    let (univ, table) = mlu_table(k, n, opts)?;
    if target.width() != univ.width() {
        return Err(Error::InvalidInput("target width differs from the universe".into()));
    }
    Ok(min_size_dense(table, den_to_mask(target), budget))
}

/// Exact minimum size of a GMLU formula with the given denotation over the
/// `Mod_n` GMLU universe, or `None` within the budget.
pub fn min_size_gmlu(
    k: usize,
    n: u32,
    target: &Denotation,
    budget: u64,
) -> Result<Option<(u64, Formula)>> {
    min_size_gmlu_opt(k, n, target, budget, DpOptions::default())
}

pub fn min_size_gmlu_opt(
    k: usize,
    n: u32,
    target: &Denotation,
    budget: u64,
    opts: DpOptions,
) -> Result<Option<(u64, Formula)>> {
    let (univ, table) = gmlu_table(k, n, opts)?;
    if target.width() != univ.width() {
        return Err(Error::InvalidInput("target width differs from the universe".into()));
    }
    Ok(min_size_dense(table, den_to_mask(target), budget))
}

/// Minimal sizes and witnesses for every class of the MLU universe, within
/// the budget; `None` entries exhausted the budget.
pub fn mlu_class_complexities(
    k: usize,
    n: usize,
    budget: u64,
) -> Result<Vec<Option<(u64, Formula)>>> {
    let (univ, mut table) = mlu_table(k, n, DpOptions::default())?;
    let targets: Vec<u32> = (0..univ.width()).map(|i| 1u32 << i).collect();
    let mut remaining = targets.len();
    table.run(budget, |_, stratum| {
        remaining -= stratum.iter().filter(|d| d.count_ones() == 1).count();
        remaining == 0
    });
    Ok(targets
        .iter()
        .map(|&t| table.size_of(t).map(|s| (s, table.witness_of(t).unwrap())))
        .collect())
}

/// Minimal sizes and witnesses for every class of the GMLU universe.
pub fn gmlu_class_complexities(
    k: usize,
    n: u32,
    budget: u64,
) -> Result<Vec<Option<(u64, Formula)>>> {
    let (univ, mut table) = gmlu_table(k, n, DpOptions::default())?;
    let targets: Vec<u32> = (0..univ.width()).map(|i| 1u32 << i).collect();
    let mut remaining = targets.len();
    table.run(budget, |_, stratum| {
        remaining -= stratum.iter().filter(|d| d.count_ones() == 1).count();
        remaining == 0
    });
    Ok(targets
        .iter()
        .map(|&t| table.size_of(t).map(|s| (s, table.witness_of(t).unwrap())))
        .collect())
}

/// Least size of an MLU formula true on all `required` classes and false on
/// all `forbidden` classes, within the budget.
pub fn min_separating_mlu(
    k: usize,
    n: usize,
    required: &Denotation,
    forbidden: &Denotation,
    budget: u64,
) -> Result<Option<(u64, Formula)>> {
    let (univ, table) = mlu_table(k, n, DpOptions::default())?;
    if required.width() != univ.width() || forbidden.width() != univ.width() {
        return Err(Error::InvalidInput("mask width differs from the universe".into()));
    }
    Ok(min_separating_dense(table, den_to_mask(required), den_to_mask(forbidden), budget))
}

/// Least size of a GMLU formula true on all `required` classes and false on
/// all `forbidden` classes, within the budget.
pub fn min_separating_gmlu(
    k: usize,
    n: u32,
    required: &Denotation,
    forbidden: &Denotation,
    budget: u64,
) -> Result<Option<(u64, Formula)>> {
    let (univ, table) = gmlu_table(k, n, DpOptions::default())?;
    if required.width() != univ.width() || forbidden.width() != univ.width() {
        return Err(Error::InvalidInput("mask width differs from the universe".into()));
    }
    Ok(min_separating_dense(table, den_to_mask(required), den_to_mask(forbidden), budget))
}

fn min_separating_dense(
    mut table: SizeTable,
    required: u32,
    forbidden: u32,
    budget: u64,
) -> Option<(u64, Formula)> {
    let mut found: Option<u32> = None;
    table.run(budget, |_, stratum| {
        for &d in stratum {
            if d & required == required && d & forbidden == 0 {
                found = Some(d);
                return true;
            }
        }
        false
    });
    let den = found?;
    Some((table.size_of(den).unwrap(), table.witness_of(den).unwrap()))
}

// ---------------------------------------------------------------------------
// Explicit constructions with exact sizes
// ---------------------------------------------------------------------------

/// The defining formula of an MLU class: diamonds for every realized type,
/// and unless all types are realized, a box over the negated missing types.
/// Size: `k 2^(k+1) + |set|` for a proper set, `k 2^(k+1) + 2^k - 1` when
/// all types are realized.
pub fn construct_phi_pi(k: usize, set: &TypeSet) -> Formula {
    assert!(!set.is_empty(), "the class of an empty type set is empty");
    let diamonds: Vec<Formula> = set
        .iter()
        .map(|t| Formula::dia(1, type_formula(&t)))
        .collect();
    let dia_part = Formula::conj(diamonds);
    let missing: Vec<Formula> = OneType::all(k)
        .filter(|t| !set.contains(t))
        .map(|t| dual_negate(&type_formula(&t)))
        .collect();
    if missing.is_empty() {
        dia_part
    } else {
        Formula::and(dia_part, Formula::boxm(1, Formula::conj(missing)))
    }
}

/// Closed-form size of `construct_phi_pi`.
pub fn phi_pi_size(k: usize, set_len: usize) -> u64 {
    let base = (k as u64) << (k + 1);
    if set_len == 1 << k {
        base + (1 << k) - 1
    } else {
        base + set_len as u64
    }
}

/// Counting conjunction: `<n_i>psi(pi_i)` over the realized types.
/// Size: `n + |I|(2k - 1) + |I| - 1`.
pub fn construct_phi1(cv: &TypeCountVector) -> Formula {
    let k = cv.k();
    let parts: Vec<Formula> = cv
        .realized()
        .into_iter()
        .map(|i| Formula::dia(cv.count(i), type_formula(&OneType::from_index(k, i))))
        .collect();
    Formula::conj(parts)
}

pub fn phi1_size(cv: &TypeCountVector) -> u64 {
    let k = cv.k() as u64;
    let c = cv.realized().len() as u64;
    u64::from(cv.n()) + c * (2 * k - 1) + c - 1
}

/// Two-sided counting form that spares the largest type: a grade-1 box
/// confining all points to the realized types, plus lower and upper counting
/// conjuncts for every realized type except the most frequent one.
/// Size: `2(n - max) + 2kc + 2(c-1)(2k-1) + 3c - 3` for `c >= 2` realized
/// types, and `2k` for a single realized type.
pub fn construct_phi2(cv: &TypeCountVector) -> Formula {
    let k = cv.k();
    let realized = cv.realized();
    let m = cv.argmax();
    let union: Vec<Formula> = realized
        .iter()
        .map(|&i| type_formula(&OneType::from_index(k, i)))
        .collect();
    let part1 = Formula::boxm(1, Formula::disj(union));
    let others: Vec<usize> = realized.iter().copied().filter(|&i| i != m).collect();
    if others.is_empty() {
        return part1;
    }
    let part2 = Formula::conj(
        others
            .iter()
            .map(|&i| Formula::dia(cv.count(i), type_formula(&OneType::from_index(k, i))))
            .collect(),
    );
    let part3 = Formula::conj(
        others
            .iter()
            .map(|&i| {
                Formula::boxm(
                    cv.count(i) + 1,
                    dual_negate(&type_formula(&OneType::from_index(k, i))),
                )
            })
            .collect(),
    );
    Formula::and(Formula::and(part1, part2), part3)
}

pub fn phi2_size(cv: &TypeCountVector) -> u64 {
    let k = cv.k() as u64;
    let c = cv.realized().len() as u64;
    if c == 1 {
        return 2 * k;
    }
    let n = u64::from(cv.n());
    let max = u64::from(cv.max_count());
    2 * (n - max) + 2 * k * c + 2 * (c - 1) * (2 * k - 1) + 3 * c - 3
}

/// The game-derived lower bound `min(n, 2(n - max))` for a GMLU class.
pub fn sandwich_lower_bound(cv: &TypeCountVector) -> u64 {
    let n = u64::from(cv.n());
    n.min(2 * (n - u64::from(cv.max_count())))
}

// ---------------------------------------------------------------------------
// FO minimization (tiny scale)
// ---------------------------------------------------------------------------

/// Exact minimum size of an FO sentence with the given class denotation,
/// by dynamic programming over denotations of open formulas evaluated on
/// every (structure, assignment) pair. `None` if the budget is exhausted.
pub fn min_size_fo(
    vocab: &Vocabulary,
    n: usize,
    target: &Denotation,
    budget: u64,
    var_cap: usize,
) -> Result<Option<(u64, Formula)>> {
    if n > 2 || var_cap > 2 || budget > 10 {
        return Err(Error::CapExceeded(
            "FO minimization supports n <= 2, var_cap <= 2, budget <= 10".into(),
        ));
    }
    let univ = FoUniverse::new(vocab, n)?;
    if target.width() != univ.width() {
        return Err(Error::InvalidInput("target width differs from the universe".into()));
    }
    let structures: Vec<_> = crate::model::all_structures(vocab, n)?.collect();
    let assignments = n.pow(var_cap as u32);
    let bit_width = structures.len() * assignments;
    let assign_of = |idx: usize| -> Vec<usize> {
        let mut a = Vec::with_capacity(var_cap);
        let mut rest = idx;
        for _ in 0..var_cap {
            a.push(rest % n);
            rest /= n;
        }
        a
    };
    // index of each canonical class representative in the labeled list
    let class_pos: Vec<usize> = univ
        .classes()
        .iter()
        .map(|c| structures.iter().position(|s| s == c).unwrap())
        .collect();

    type Key = (u64, Vec<u64>);
    let mut best: HashMap<Key, (u64, Formula)> = HashMap::new();
    let mut frontier: Vec<Vec<Key>> = vec![Vec::new(); budget as usize + 1];

    let eval_bits = |f: &Formula| -> Vec<u64> {
        let mut words = vec![0u64; bit_width.div_ceil(64)];
        for (si, s) in structures.iter().enumerate() {
            for ai in 0..assignments {
                let assignment = assign_of(ai);
                if eval_open(s, f, &assignment) {
                    let bit = si * assignments + ai;
                    words[bit / 64] |= 1 << (bit % 64);
                }
            }
        }
        words
    };

    // size-1 atoms: relation atoms and equalities over the working variables
    let mut atoms: Vec<Formula> = Vec::new();
    for (ri, (_, arity)) in vocab.relations().iter().enumerate() {
        let mut args = vec![0usize; *arity];
        loop {
            for positive in [true, false] {
                atoms.push(Formula::Atom { rel: ri, args: args.clone(), positive });
            }
            let mut pos = *arity;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                args[pos] += 1;
                if args[pos] < var_cap {
                    break;
                }
                args[pos] = 0;
            }
            if args.iter().all(|&a| a == 0) {
                break;
            }
        }
    }
    for l in 0..var_cap {
        for r in 0..var_cap {
            for positive in [true, false] {
                atoms.push(Formula::Eq { left: l, right: r, positive });
            }
        }
    }

    let mut insert = |f: Formula,
                      s: u64,
                      best: &mut HashMap<Key, (u64, Formula)>,
                      frontier: &mut Vec<Vec<Key>>|
     -> Option<Key> {
        let key = (free_vars(&f), eval_bits(&f));
        if !best.contains_key(&key) {
            best.insert(key.clone(), (s, f));
            frontier[s as usize].push(key.clone());
            return Some(key);
        }
        None
    };

    let check_target = |key: &Key| -> bool {
        if key.0 != 0 {
            return false;
        }
        // closed formula: class denotation from the canonical representatives
        for (ci, &pos) in class_pos.iter().enumerate() {
            let bit = pos * assignments;
            let val = key.1[bit / 64] >> (bit % 64) & 1 == 1;
            if val != target.get(ci) {
                return false;
            }
        }
        true
    };

    for s in 1..=budget {
        let mut new_keys: Vec<Key> = Vec::new();
        if s == 1 {
            for a in atoms.clone() {
                if let Some(k) = insert(a, 1, &mut best, &mut frontier) {
                    new_keys.push(k);
                }
            }
        }
        // quantifiers over size s-1 entries
        if s >= 2 {
            let prev: Vec<Key> = frontier[(s - 1) as usize].clone();
            for key in prev {
                let child = best[&key].1.clone();
                for v in 0..var_cap {
                    for exists in [true, false] {
                        let f = if exists {
                            Formula::exists(v, child.clone())
                        } else {
                            Formula::forall(v, child.clone())
                        };
                        if let Some(k) = insert(f, s, &mut best, &mut frontier) {
                            new_keys.push(k);
                        }
                    }
                }
            }
        }
        // binary combinations
        if s >= 3 {
            for s1 in 1..=(s - 1) / 2 {
                let s2 = s - 1 - s1;
                let f1 = frontier[s1 as usize].clone();
                let f2 = frontier[s2 as usize].clone();
                for k1 in &f1 {
                    for k2 in &f2 {
                        let l = best[k1].1.clone();
                        let r = best[k2].1.clone();
                        for (f, _and) in [
                            (Formula::and(l.clone(), r.clone()), true),
                            (Formula::or(l, r), false),
                        ] {
                            if let Some(k) = insert(f, s, &mut best, &mut frontier) {
                                new_keys.push(k);
                            }
                        }
                    }
                }
            }
        }
        for key in &new_keys {
            if check_target(key) {
                let (sz, f) = best[key].clone();
                return Ok(Some((sz, f)));
            }
        }
    }
    Ok(None)
}

fn eval_open(s: &crate::model::RelationalStructure, f: &Formula, assignment: &[usize]) -> bool {
    match f {
        Formula::Eq { left, right, positive } => {
            (assignment[*left] == assignment[*right]) == *positive
        }
        Formula::Atom { rel, args, positive } => {
            let vals: Vec<usize> = args.iter().map(|&a| assignment[a]).collect();
            s.holds(*rel, &vals) == *positive
        }
        Formula::And(l, r) => eval_open(s, l, assignment) && eval_open(s, r, assignment),
        Formula::Or(l, r) => eval_open(s, l, assignment) || eval_open(s, r, assignment),
        Formula::Exists { var, child } => (0..s.n()).any(|e| {
            let mut a = assignment.to_vec();
            a[*var] = e;
            eval_open(s, child, &a)
        }),
        Formula::Forall { var, child } => (0..s.n()).all(|e| {
            let mut a = assignment.to_vec();
            a[*var] = e;
            eval_open(s, child, &a)
        }),
        _ => unreachable!("modal node in FO formula"),
    }
}
