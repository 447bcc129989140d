//! Truth evaluation for the modal dialects (point-free) and FO, and
//! denotations of formulas as bitsets over class universes.

use crate::error::{Error, Result};
use crate::model::{
    compositions, KripkeModel, RelationalStructure, TypeCountVector, TypeSet, PERM_CAP,
};
use crate::syntax::{check_well_formed, free_vars, render, Dialect, Formula, Vocabulary};
use std::collections::HashMap;

/// Pointwise truth of a modal formula at a world. Point-free truth of a
/// well-formed formula does not depend on the world.
pub fn eval_at(model: &KripkeModel, world: usize, f: &Formula) -> Result<bool> {
    Ok(match f {
        Formula::Lit { prop, positive } => {
            if *prop >= model.k() {
                return Err(Error::VocabularyMismatch(format!(
                    "p{} is not in the model's vocabulary",
                    prop + 1
                )));
            }
            model.type_of(world).satisfies(*prop) == *positive
        }
        Formula::And(l, r) => eval_at(model, world, l)? && eval_at(model, world, r)?,
        Formula::Or(l, r) => eval_at(model, world, l)? || eval_at(model, world, r)?,
        Formula::Dia { grade, child } => {
            let mut count = 0u32;
            for v in model.worlds() {
                if eval_at(model, v, child)? {
                    count += 1;
                    if count >= *grade {
                        break;
                    }
                }
            }
            count >= *grade
        }
        Formula::Boxm { grade, child } => {
            // fewer than `grade` exceptions
            let mut exceptions = 0u32;
            for v in model.worlds() {
                if !eval_at(model, v, child)? {
                    exceptions += 1;
                    if exceptions >= *grade {
                        break;
                    }
                }
            }
            exceptions < *grade
        }
        _ => {
            return Err(Error::WellFormedness(
                "first-order construct in a modal formula".into(),
            ))
        }
    })
}

/// Point-free truth of a GMLU (or MLU) formula.
pub fn eval_gmlu(model: &KripkeModel, f: &Formula) -> Result<bool> {
    eval_at(model, 0, f)
}

/// Standard Tarskian truth of a closed FO formula over a small structure.
pub fn eval_fo(s: &RelationalStructure, sentence: &Formula) -> Result<bool> {
    if s.n() > PERM_CAP {
        return Err(Error::CapExceeded(format!(
            "FO evaluation needs n <= {PERM_CAP}, got {}",
            s.n()
        )));
    }
    let fv = free_vars(sentence);
    if fv != 0 {
        return Err(Error::FreeVariable(fv.trailing_zeros() as usize));
    }
    let mut assignment = vec![None; 64];
    eval_fo_rec(s, sentence, &mut assignment)
}

fn eval_fo_rec(
    s: &RelationalStructure,
    f: &Formula,
    assignment: &mut Vec<Option<usize>>,
) -> Result<bool> {
    Ok(match f {
        Formula::Eq { left, right, positive } => {
            let l = assignment[*left].ok_or(Error::FreeVariable(*left))?;
            let r = assignment[*right].ok_or(Error::FreeVariable(*right))?;
            (l == r) == *positive
        }
        Formula::Atom { rel, args, positive } => {
            let vals: Result<Vec<usize>> = args
                .iter()
                .map(|&a| assignment[a].ok_or(Error::FreeVariable(a)))
                .collect();
            s.holds(*rel, &vals?) == *positive
        }
        Formula::And(l, r) => eval_fo_rec(s, l, assignment)? && eval_fo_rec(s, r, assignment)?,
        Formula::Or(l, r) => eval_fo_rec(s, l, assignment)? || eval_fo_rec(s, r, assignment)?,
        Formula::Exists { var, child } => {
            let saved = assignment[*var];
            let mut found = false;
            for e in 0..s.n() {
                assignment[*var] = Some(e);
                if eval_fo_rec(s, child, assignment)? {
                    found = true;
                    break;
                }
            }
            assignment[*var] = saved;
            found
        }
        Formula::Forall { var, child } => {
            let saved = assignment[*var];
            let mut all = true;
            for e in 0..s.n() {
                assignment[*var] = Some(e);
                if !eval_fo_rec(s, child, assignment)? {
                    all = false;
                    break;
                }
            }
            assignment[*var] = saved;
            all
        }
        _ => {
            return Err(Error::WellFormedness(
                "modal construct in a first-order formula".into(),
            ))
        }
    })
}

/// A set of classes out of a fixed, ordered universe, as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Denotation {
    width: usize,
    words: Vec<u64>,
}

impl Denotation {
    pub fn empty(width: usize) -> Self {
        Self { width, words: vec![0; width.div_ceil(64)] }
    }

    pub fn full(width: usize) -> Self {
        let mut d = Self::empty(width);
        for i in 0..width {
            d.set(i, true);
        }
        d
    }

    pub fn singleton(width: usize, index: usize) -> Self {
        let mut d = Self::empty(width);
        d.set(index, true);
        d
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.width);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_set(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&i| self.get(i))
    }

    pub fn and(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self {
            width: self.width,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self {
            width: self.width,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let mut d = Self {
            width: self.width,
            words: self.words.iter().map(|w| !w).collect(),
        };
        // clear padding bits
        let used = self.width % 64;
        if used != 0 {
            if let Some(last) = d.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        d
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == *b)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Low 64 bits; valid for universes of width <= 64.
    pub fn as_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_u64(width: usize, bits: u64) -> Self {
        debug_assert!(width <= 64);
        Self { width, words: vec![bits & if width == 64 { u64::MAX } else { (1 << width) - 1 }] }
    }
}

/// The MLU class universe over `Mod_n`: all nonempty realizable type sets,
/// ascending by bitmask.
#[derive(Debug, Clone)]
pub struct MluUniverse {
    k: usize,
    n: usize,
    classes: Vec<TypeSet>,
    cache: HashMap<String, Denotation>,
}

impl MluUniverse {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::InvalidInput("k and n must be at least 1".into()));
        }
        if k > 4 {
            return Err(Error::CapExceeded("MLU universe needs k <= 4".into()));
        }
        let classes = (1u32..(1u32 << (1usize << k)))
            .filter(|m| (m.count_ones() as usize) <= n)
            .map(|m| TypeSet::new(k, m))
            .collect();
        Ok(Self { k, n, classes, cache: HashMap::new() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[TypeSet] {
        &self.classes
    }

    pub fn width(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, ts: &TypeSet) -> Option<usize> {
        self.classes.binary_search_by_key(&ts.mask(), |c| c.mask()).ok()
    }

    /// A member of the class over exactly `n` worlds: the realized types in
    /// ascending order, padded with the smallest realized type.
    pub fn representative(&self, ts: &TypeSet) -> KripkeModel {
        representative_of_type_set(ts, self.n)
    }

    /// Denotation of an MLU formula over this universe.
    pub fn denotation(&self, f: &Formula) -> Result<Denotation> {
        check_well_formed(f, &Vocabulary::unary(self.k)?, Dialect::Mlu)?;
        let mut d = Denotation::empty(self.width());
        for (i, ts) in self.classes.iter().enumerate() {
            if eval_gmlu(&self.representative(ts), f)? {
                d.set(i, true);
            }
        }
        Ok(d)
    }

    /// As `denotation`, caching by the canonical rendering.
    pub fn denotation_cached(&mut self, f: &Formula) -> Result<Denotation> {
        let key = render(f);
        if let Some(d) = self.cache.get(&key) {
            return Ok(d.clone());
        }
        let d = self.denotation(f)?;
        self.cache.insert(key, d.clone());
        Ok(d)
    }
}

/// A member of an MLU class over exactly `n` worlds.
pub fn representative_of_type_set(ts: &TypeSet, n: usize) -> KripkeModel {
    let mut types: Vec<_> = ts.iter().collect();
    assert!(!types.is_empty() && types.len() <= n);
    let pad = types[0];
    while types.len() < n {
        types.push(pad);
    }
    KripkeModel::new(ts.k(), types).unwrap()
}

/// The GMLU class universe over `Mod_n`: all count vectors summing to `n`,
/// ascending lexicographic.
#[derive(Debug, Clone)]
pub struct GmluUniverse {
    k: usize,
    n: u32,
    classes: Vec<TypeCountVector>,
    cache: HashMap<String, Denotation>,
}

impl GmluUniverse {
    pub fn new(k: usize, n: u32) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::InvalidInput("k and n must be at least 1".into()));
        }
        if k > 4 {
            return Err(Error::CapExceeded("GMLU universe needs k <= 4".into()));
        }
        let classes = compositions(k, n);
        if classes.len() > 2_000_000 {
            return Err(Error::CapExceeded(format!(
                "GMLU universe has {} classes, beyond the working cap",
                classes.len()
            )));
        }
        Ok(Self { k, n, classes, cache: HashMap::new() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn classes(&self) -> &[TypeCountVector] {
        &self.classes
    }

    pub fn width(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, cv: &TypeCountVector) -> Option<usize> {
        self.classes.binary_search(cv).ok()
    }

    /// Denotation of a GMLU formula over this universe.
    pub fn denotation(&self, f: &Formula) -> Result<Denotation> {
        check_well_formed(f, &Vocabulary::unary(self.k)?, Dialect::Gmlu)?;
        let mut d = Denotation::empty(self.width());
        for (i, cv) in self.classes.iter().enumerate() {
            if eval_gmlu(&cv.representative(), f)? {
                d.set(i, true);
            }
        }
        Ok(d)
    }

    pub fn denotation_cached(&mut self, f: &Formula) -> Result<Denotation> {
        let key = render(f);
        if let Some(d) = self.cache.get(&key) {
            return Ok(d.clone());
        }
        let d = self.denotation(f)?;
        self.cache.insert(key, d.clone());
        Ok(d)
    }
}

/// The FO class universe over `Mod_n`: canonical forms in ascending order.
#[derive(Debug, Clone)]
pub struct FoUniverse {
    vocab: Vocabulary,
    n: usize,
    classes: Vec<RelationalStructure>,
}

impl FoUniverse {
    pub fn new(vocab: &Vocabulary, n: usize) -> Result<Self> {
        let mut forms: Vec<RelationalStructure> = Vec::new();
        for s in crate::model::all_structures(vocab, n)? {
            forms.push(s.canonical_form()?);
        }
        forms.sort();
        forms.dedup();
        Ok(Self { vocab: vocab.clone(), n, classes: forms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn classes(&self) -> &[RelationalStructure] {
        &self.classes
    }

    pub fn width(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, s: &RelationalStructure) -> Result<Option<usize>> {
        Ok(self.classes.binary_search(&s.canonical_form()?).ok())
    }

    /// Denotation of a closed FO formula over this universe.
    pub fn denotation(&self, sentence: &Formula) -> Result<Denotation> {
        check_well_formed(sentence, &self.vocab, Dialect::Fo)?;
        let mut d = Denotation::empty(self.width());
        for (i, s) in self.classes.iter().enumerate() {
            if eval_fo(s, sentence)? {
                d.set(i, true);
            }
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::enumerate_kripke;
    use crate::syntax::{dual_negate, parse, Dialect};

    fn voc(k: usize) -> Vocabulary {
        Vocabulary::unary(k).unwrap()
    }

    #[test]
    fn graded_counting() {
        let v = voc(1);
        let m = KripkeModel::from_indices(1, &[0, 0, 1]).unwrap(); // counts [2,1]
        assert!(eval_gmlu(&m, &parse("<2>p1", &v, Dialect::Gmlu).unwrap()).unwrap());
        assert!(!eval_gmlu(&m, &parse("<3>p1", &v, Dialect::Gmlu).unwrap()).unwrap());
        let allp = KripkeModel::from_indices(1, &[0, 0]).unwrap();
        assert!(eval_gmlu(&allp, &parse("[1]p1", &v, Dialect::Gmlu).unwrap()).unwrap());
    }

    #[test]
    fn box_dia_duality_exhaustive() {
        let v = voc(1);
        let bodies = ["p1", "!p1", "p1 & !p1", "p1 | !p1"];
        for m in enumerate_kripke(1, 3).unwrap() {
            for d in 1..=4u32 {
                for b in bodies {
                    let psi = parse(&format!("<1>({b})"), &v, Dialect::Gmlu).unwrap();
                    let psi = match psi {
                        Formula::Dia { child, .. } => *child,
                        _ => unreachable!(),
                    };
                    let boxed = Formula::boxm(d, psi.clone());
                    let dia_neg = Formula::dia(d, dual_negate(&psi));
                    assert_eq!(
                        eval_gmlu(&m, &boxed).unwrap(),
                        !eval_gmlu(&m, &dia_neg).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn dual_negate_flips_truth_exhaustively() {
        for k in 1..=2usize {
            let v = voc(k);
            let formulas = [
                "<1>p1",
                "[1]p1",
                "<1>p1 & <1>!p1",
                "<1>p1 | [1]!p1",
                "[1](p1 | !p1)",
            ];
            for n in 1..=3usize {
                for m in enumerate_kripke(k, n).unwrap() {
                    for s in formulas {
                        let f = parse(s, &v, Dialect::Mlu).unwrap();
                        assert_eq!(
                            eval_gmlu(&m, &dual_negate(&f)).unwrap(),
                            !eval_gmlu(&m, &f).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fo_eval_basics() {
        let rv = Vocabulary::relational(&[2]).unwrap();
        let s = RelationalStructure::parse("n=2; R1={(1,1),(1,2)}", &rv).unwrap();
        assert!(eval_fo(&s, &parse("E x1 R1(x1,x1)", &rv, Dialect::Fo).unwrap()).unwrap());
        assert!(!eval_fo(&s, &parse("A x1 A x2 x1=x2", &rv, Dialect::Fo).unwrap()).unwrap());
        let open = parse("R1(x1,x1)", &rv, Dialect::Fo).unwrap();
        assert!(matches!(eval_fo(&s, &open), Err(Error::FreeVariable(0))));
    }

    #[test]
    fn gmlu_truth_constant_on_classes() {
        let v = voc(2);
        let formulas = [
            "<2>(p1 & p2)",
            "<1>p1 & [2]!p2",
            "[1](p1 | p2)",
            "<3>p1 | <2>!p2",
        ];
        for n in 1..=4usize {
            let mut by_class: HashMap<TypeCountVector, Vec<bool>> = HashMap::new();
            for m in enumerate_kripke(2, n).unwrap() {
                let (_, cv) = m.classify();
                let vals: Vec<bool> = formulas
                    .iter()
                    .map(|s| eval_gmlu(&m, &parse(s, &v, Dialect::Gmlu).unwrap()).unwrap())
                    .collect();
                if let Some(prev) = by_class.get(&cv) {
                    assert_eq!(prev, &vals, "class {} differs", cv.render());
                } else {
                    by_class.insert(cv, vals);
                }
            }
        }
    }

    #[test]
    fn mlu_truth_constant_on_type_sets() {
        let v = voc(2);
        let formulas = ["<1>p1", "[1](p1 | p2)", "<1>(p1 & !p2) | [1]p2"];
        for n in 1..=4usize {
            let mut by_set: HashMap<TypeSet, Vec<bool>> = HashMap::new();
            for m in enumerate_kripke(2, n).unwrap() {
                let (ts, _) = m.classify();
                let vals: Vec<bool> = formulas
                    .iter()
                    .map(|s| eval_gmlu(&m, &parse(s, &v, Dialect::Mlu).unwrap()).unwrap())
                    .collect();
                if let Some(prev) = by_set.get(&ts) {
                    assert_eq!(prev, &vals);
                } else {
                    by_set.insert(ts, vals);
                }
            }
        }
    }

    #[test]
    fn grade_one_diamond_matches_exists_point() {
        let v = voc(1);
        let f = parse("<1>p1", &v, Dialect::Mlu).unwrap();
        for m in enumerate_kripke(1, 3).unwrap() {
            let direct = m.worlds().any(|w| m.type_of(w).satisfies(0));
            assert_eq!(eval_gmlu(&m, &f).unwrap(), direct);
        }
    }

    #[test]
    fn denotation_examples() {
        let v = voc(1);
        let mut u = GmluUniverse::new(1, 2).unwrap();
        // classes ascending: [0,2], [1,1], [2,0]
        let d = u.denotation_cached(&parse("<2>p1", &v, Dialect::Gmlu).unwrap()).unwrap();
        assert_eq!(d.iter_set().collect::<Vec<_>>(), vec![2]);
        let d2 = u.denotation(&parse("<1>p1 | [1]!p1", &v, Dialect::Gmlu).unwrap()).unwrap();
        assert_eq!(d2.count(), 3);
    }

    #[test]
    fn denotation_complement() {
        let v = voc(1);
        let u = GmluUniverse::new(1, 3).unwrap();
        for s in ["<2>p1", "[1]p1 | <3>!p1"] {
            let f = parse(s, &v, Dialect::Gmlu).unwrap();
            let d = u.denotation(&f).unwrap();
            let dn = u.denotation(&dual_negate(&f)).unwrap();
            assert_eq!(dn, d.complement());
        }
    }

    #[test]
    fn fo_universe_classes() {
        let rv = Vocabulary::relational(&[2]).unwrap();
        let u = FoUniverse::new(&rv, 2).unwrap();
        assert_eq!(u.width(), 10); // digraphs on 2 vertices
        let taut = parse("E x1 x1=x1", &rv, Dialect::Fo).unwrap();
        assert_eq!(u.denotation(&taut).unwrap().count(), 10);
    }
}
