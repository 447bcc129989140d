//! Formula syntax: abstract syntax trees in negation normal form, the size
//! measure, parsing and canonical printing for the three dialects.

use crate::error::{Error, Result};
use std::fmt;

/// Dialect of the formula language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    /// Universal modal logic: grade-1 modalities only.
    Mlu,
    /// Graded universal modal logic: counting modalities `<d>` / `[d]`.
    Gmlu,
    /// First-order logic over a relational vocabulary.
    Fo,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dialect::Mlu => write!(f, "mlu"),
            Dialect::Gmlu => write!(f, "gmlu"),
            Dialect::Fo => write!(f, "fo"),
        }
    }
}

/// A vocabulary: proposition symbols for the modal dialects, relation
/// symbols (with arities) for FO.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    props: Vec<String>,
    relations: Vec<(String, usize)>,
}

impl Vocabulary {
    /// Unary vocabulary `p1..pk`.
    pub fn unary(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("need at least one proposition".into()));
        }
        Ok(Self {
            props: (1..=k).map(|i| format!("p{i}")).collect(),
            relations: Vec::new(),
        })
    }

    /// Relational vocabulary `R1..Rm` with the given arities.
    pub fn relational(arities: &[usize]) -> Result<Self> {
        if arities.iter().any(|&a| a == 0) {
            return Err(Error::InvalidInput("relation arities must be >= 1".into()));
        }
        Ok(Self {
            props: Vec::new(),
            relations: arities
                .iter()
                .enumerate()
                .map(|(i, &a)| (format!("R{}", i + 1), a))
                .collect(),
        })
    }

    pub fn prop_count(&self) -> usize {
        self.props.len()
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn relation_arity(&self, rel: usize) -> Option<usize> {
        self.relations.get(rel).map(|(_, a)| *a)
    }

    /// Maximum arity over the relation symbols.
    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }

    /// Number of atomic formulas over `n` named variables:
    /// the sum of `n^ar(R)` over the relation symbols.
    pub fn atomic_count(&self, n: usize) -> u64 {
        self.relations
            .iter()
            .map(|(_, a)| (n as u64).pow(*a as u32))
            .sum()
    }
}

/// A 1-type: one polarity per proposition symbol.
///
/// Types are indexed so that the all-positive type has index 0 and the
/// all-negative type has index `2^k - 1`; every count vector and type-set
/// bitmask in the crate inherits this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneType {
    k: u8,
    neg_bits: u16,
}

impl OneType {
    pub fn from_index(k: usize, idx: usize) -> Self {
        debug_assert!(k >= 1 && k <= 16 && idx < (1 << k));
        Self {
            k: k as u8,
            neg_bits: idx as u16,
        }
    }

    /// All `2^k` types in canonical order.
    pub fn all(k: usize) -> impl Iterator<Item = OneType> {
        (0..(1usize << k)).map(move |i| OneType::from_index(k, i))
    }

    pub fn index(&self) -> usize {
        self.neg_bits as usize
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    /// Does the type make proposition `prop` (0-based) true?
    pub fn satisfies(&self, prop: usize) -> bool {
        self.neg_bits >> prop & 1 == 0
    }

    /// Number of propositions on which the two types disagree.
    pub fn hamming(&self, other: &OneType) -> u32 {
        (self.neg_bits ^ other.neg_bits).count_ones()
    }

    /// Literal polarities in proposition order.
    pub fn polarities(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.k as usize).map(move |i| self.satisfies(i))
    }

    /// Text form `p1&!p2`.
    pub fn render(&self) -> String {
        self.polarities()
            .enumerate()
            .map(|(i, pos)| {
                if pos {
                    format!("p{}", i + 1)
                } else {
                    format!("!p{}", i + 1)
                }
            })
            .collect::<Vec<_>>()
            .join("&")
    }
}

/// Formula AST in strict negation normal form: negation appears only as a
/// polarity flag on literals, equalities and atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Propositional literal `p` / `!p` (modal dialects).
    Lit { prop: usize, positive: bool },
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// `<d>phi`: at least `d` points satisfy `phi`.
    Dia { grade: u32, child: Box<Formula> },
    /// `[d]phi`: all points except fewer than `d` satisfy `phi`.
    Boxm { grade: u32, child: Box<Formula> },
    /// `E x phi` (FO).
    Exists { var: usize, child: Box<Formula> },
    /// `A x phi` (FO).
    Forall { var: usize, child: Box<Formula> },
    /// `x=y` / `!x=y` (FO).
    Eq { left: usize, right: usize, positive: bool },
    /// `R(x..)` / `!R(x..)` (FO).
    Atom { rel: usize, args: Vec<usize>, positive: bool },
}

impl Formula {
    pub fn lit(prop: usize, positive: bool) -> Self {
        Formula::Lit { prop, positive }
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn dia(grade: u32, child: Formula) -> Self {
        Formula::Dia { grade, child: Box::new(child) }
    }

    pub fn boxm(grade: u32, child: Formula) -> Self {
        Formula::Boxm { grade, child: Box::new(child) }
    }

    pub fn exists(var: usize, child: Formula) -> Self {
        Formula::Exists { var, child: Box::new(child) }
    }

    pub fn forall(var: usize, child: Formula) -> Self {
        Formula::Forall { var, child: Box::new(child) }
    }

    /// Left-nested conjunction of a nonempty sequence.
    pub fn conj(mut parts: Vec<Formula>) -> Formula {
        assert!(!parts.is_empty());
        let mut acc = parts.remove(0);
        for p in parts {
            acc = Formula::and(acc, p);
        }
        acc
    }

    /// Left-nested disjunction of a nonempty sequence.
    pub fn disj(mut parts: Vec<Formula>) -> Formula {
        assert!(!parts.is_empty());
        let mut acc = parts.remove(0);
        for p in parts {
            acc = Formula::or(acc, p);
        }
        acc
    }
}

/// Formula size: literals, equalities and atoms cost 1, binary connectives
/// cost 1, a grade-`d` modality costs `d`, a quantifier costs 1.
pub fn size(f: &Formula) -> u64 {
    match f {
        Formula::Lit { .. } | Formula::Eq { .. } | Formula::Atom { .. } => 1,
        Formula::And(l, r) | Formula::Or(l, r) => size(l) + size(r) + 1,
        Formula::Dia { grade, child } | Formula::Boxm { grade, child } => {
            size(child) + u64::from(*grade)
        }
        Formula::Exists { child, .. } | Formula::Forall { child, .. } => size(child) + 1,
    }
}

/// Negation normal form of the negation: dualizes connectives and
/// modalities, flips literal polarities. Preserves size.
pub fn dual_negate(f: &Formula) -> Formula {
    match f {
        Formula::Lit { prop, positive } => Formula::Lit { prop: *prop, positive: !positive },
        Formula::And(l, r) => Formula::or(dual_negate(l), dual_negate(r)),
        Formula::Or(l, r) => Formula::and(dual_negate(l), dual_negate(r)),
        Formula::Dia { grade, child } => Formula::boxm(*grade, dual_negate(child)),
        Formula::Boxm { grade, child } => Formula::dia(*grade, dual_negate(child)),
        Formula::Exists { var, child } => Formula::forall(*var, dual_negate(child)),
        Formula::Forall { var, child } => Formula::exists(*var, dual_negate(child)),
        Formula::Eq { left, right, positive } => {
            Formula::Eq { left: *left, right: *right, positive: !positive }
        }
        Formula::Atom { rel, args, positive } => {
            Formula::Atom { rel: *rel, args: args.clone(), positive: !positive }
        }
    }
}

/// The conjunction of the `k` literals of a 1-type, left-nested.
/// Its size is `2k - 1`.
pub fn type_formula(pi: &OneType) -> Formula {
    let lits: Vec<Formula> = pi
        .polarities()
        .enumerate()
        .map(|(i, pos)| Formula::lit(i, pos))
        .collect();
    Formula::conj(lits)
}

fn prec(f: &Formula) -> u8 {
    // 0 = or, 1 = and, 2 = everything else
    match f {
        Formula::Or(..) => 0,
        Formula::And(..) => 1,
        _ => 2,
    }
}

fn render_into(f: &Formula, out: &mut String) {
    match f {
        Formula::Lit { prop, positive } => {
            if !positive {
                out.push('!');
            }
            out.push('p');
            out.push_str(&(prop + 1).to_string());
        }
        Formula::And(l, r) => {
            render_child(l, 1, false, out);
            out.push_str(" & ");
            render_child(r, 1, true, out);
        }
        Formula::Or(l, r) => {
            render_child(l, 0, false, out);
            out.push_str(" | ");
            render_child(r, 0, true, out);
        }
        Formula::Dia { grade, child } => {
            out.push('<');
            out.push_str(&grade.to_string());
            out.push('>');
            render_child(child, 2, true, out);
        }
        Formula::Boxm { grade, child } => {
            out.push('[');
            out.push_str(&grade.to_string());
            out.push(']');
            render_child(child, 2, true, out);
        }
        Formula::Exists { var, child } => {
            out.push_str("E x");
            out.push_str(&(var + 1).to_string());
            out.push(' ');
            render_child(child, 2, true, out);
        }
        Formula::Forall { var, child } => {
            out.push_str("A x");
            out.push_str(&(var + 1).to_string());
            out.push(' ');
            render_child(child, 2, true, out);
        }
        Formula::Eq { left, right, positive } => {
            if !positive {
                out.push('!');
            }
            out.push('x');
            out.push_str(&(left + 1).to_string());
            out.push('=');
            out.push('x');
            out.push_str(&(right + 1).to_string());
        }
        Formula::Atom { rel, args, positive } => {
            if !positive {
                out.push('!');
            }
            out.push('R');
            out.push_str(&(rel + 1).to_string());
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('x');
                out.push_str(&(a + 1).to_string());
            }
            out.push(')');
        }
    }
}

fn render_child(child: &Formula, parent_prec: u8, is_right: bool, out: &mut String) {
    // Left-associative chains stay bare; anything binding looser than the
    // parent, or a same-precedence right operand, is parenthesized.
    let cp = prec(child);
    let parens = cp < parent_prec || (cp == parent_prec && cp != 2 && is_right);
    if parens {
        out.push('(');
        render_into(child, out);
        out.push(')');
    } else {
        render_into(child, out);
    }
}

/// Canonical text form. `parse(render(f)) == f` for well-formed `f`.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    render_into(f, &mut out);
    out
}

/// Well-formedness for a dialect: checks node kinds, modal scoping of
/// literals, grade restrictions, and symbol ranges.
pub fn check_well_formed(f: &Formula, vocab: &Vocabulary, dialect: Dialect) -> Result<()> {
    match dialect {
        Dialect::Mlu | Dialect::Gmlu => check_modal(f, vocab, dialect, 0),
        Dialect::Fo => check_fo(f, vocab),
    }
}

fn check_modal(f: &Formula, vocab: &Vocabulary, dialect: Dialect, depth: usize) -> Result<()> {
    match f {
        Formula::Lit { prop, .. } => {
            if *prop >= vocab.prop_count() {
                return Err(Error::WellFormedness(format!(
                    "unknown proposition p{}",
                    prop + 1
                )));
            }
            if depth == 0 {
                return Err(Error::WellFormedness(
                    "literal outside the scope of a modality".into(),
                ));
            }
            Ok(())
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            check_modal(l, vocab, dialect, depth)?;
            check_modal(r, vocab, dialect, depth)
        }
        Formula::Dia { grade, child } | Formula::Boxm { grade, child } => {
            if *grade == 0 {
                return Err(Error::WellFormedness("grade must be positive".into()));
            }
            if dialect == Dialect::Mlu && *grade != 1 {
                return Err(Error::WellFormedness(format!(
                    "grade {grade} is not allowed in MLU"
                )));
            }
            check_modal(child, vocab, dialect, depth + 1)
        }
        _ => Err(Error::WellFormedness(
            "first-order construct in a modal formula".into(),
        )),
    }
}

fn check_fo(f: &Formula, vocab: &Vocabulary) -> Result<()> {
    match f {
        Formula::Eq { .. } => Ok(()),
        Formula::Atom { rel, args, .. } => match vocab.relation_arity(*rel) {
            Some(a) if a == args.len() => Ok(()),
            Some(a) => Err(Error::WellFormedness(format!(
                "R{} expects {} arguments, got {}",
                rel + 1,
                a,
                args.len()
            ))),
            None => Err(Error::WellFormedness(format!("unknown relation R{}", rel + 1))),
        },
        Formula::And(l, r) | Formula::Or(l, r) => {
            check_fo(l, vocab)?;
            check_fo(r, vocab)
        }
        Formula::Exists { child, .. } | Formula::Forall { child, .. } => check_fo(child, vocab),
        _ => Err(Error::WellFormedness(
            "modal construct in a first-order formula".into(),
        )),
    }
}

/// Free variables of an FO formula, as a bitmask.
pub fn free_vars(f: &Formula) -> u64 {
    match f {
        Formula::Lit { .. } => 0,
        Formula::And(l, r) | Formula::Or(l, r) => free_vars(l) | free_vars(r),
        Formula::Dia { child, .. } | Formula::Boxm { child, .. } => free_vars(child),
        Formula::Exists { var, child } | Formula::Forall { var, child } => {
            free_vars(child) & !(1u64 << var)
        }
        Formula::Eq { left, right, .. } => (1u64 << left) | (1u64 << right),
        Formula::Atom { args, .. } => args.iter().fold(0, |m, a| m | (1u64 << a)),
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vocab: &'a Vocabulary,
    dialect: Dialect,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => self.err(format!("expected '{}', found '{}'", c as char, got as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| Error::Syntax { pos: start, msg: "number out of range".into() })
    }

    /// `p<i>` with 1-based index, checked against the vocabulary.
    fn prop(&mut self) -> Result<usize> {
        self.expect(b'p')?;
        let at = self.pos;
        let i = self.number()?;
        if i == 0 || i as usize > self.vocab.prop_count() {
            return Err(Error::Syntax { pos: at, msg: format!("unknown symbol p{i}") });
        }
        Ok(i as usize - 1)
    }

    fn var(&mut self) -> Result<usize> {
        self.expect(b'x')?;
        let at = self.pos;
        let i = self.number()?;
        if i == 0 || i > 64 {
            return Err(Error::Syntax { pos: at, msg: format!("variable x{i} out of range") });
        }
        Ok(i as usize - 1)
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut acc = self.conjunct()?;
        while self.peek() == Some(b'|') {
            self.bump();
            let rhs = self.conjunct()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunct(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'&') {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn grade(&mut self, close: u8) -> Result<u32> {
        // `<>` and `[]` abbreviate grade 1
        if self.peek() == Some(close) {
            self.bump();
            return Ok(1);
        }
        let at = self.pos;
        let d = self.number()?;
        if d == 0 {
            return Err(Error::Syntax { pos: at, msg: "grade must be positive".into() });
        }
        if d > u32::MAX as u64 {
            return Err(Error::Syntax { pos: at, msg: "grade out of range".into() });
        }
        self.expect(close)?;
        Ok(d as u32)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let f = self.formula()?;
                self.expect(b')')?;
                Ok(f)
            }
            Some(b'<') if self.dialect != Dialect::Fo => {
                self.bump();
                let d = self.grade(b'>')?;
                let child = self.unary()?;
                Ok(Formula::dia(d, child))
            }
            Some(b'[') if self.dialect != Dialect::Fo => {
                self.bump();
                let d = self.grade(b']')?;
                let child = self.unary()?;
                Ok(Formula::boxm(d, child))
            }
            Some(b'!') => {
                self.bump();
                // `!` is legal only directly before a literal, atom or equality
                match self.dialect {
                    Dialect::Fo => self.fo_atomic(false),
                    _ => {
                        let p = self.prop()?;
                        Ok(Formula::lit(p, false))
                    }
                }
            }
            Some(b'p') if self.dialect != Dialect::Fo => {
                let p = self.prop()?;
                Ok(Formula::lit(p, true))
            }
            Some(b'E') if self.dialect == Dialect::Fo => {
                self.bump();
                let v = self.var()?;
                let child = self.unary()?;
                Ok(Formula::exists(v, child))
            }
            Some(b'A') if self.dialect == Dialect::Fo => {
                self.bump();
                let v = self.var()?;
                let child = self.unary()?;
                Ok(Formula::forall(v, child))
            }
            Some(b'R') | Some(b'x') if self.dialect == Dialect::Fo => self.fo_atomic(true),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn fo_atomic(&mut self, positive: bool) -> Result<Formula> {
        match self.peek() {
            Some(b'R') => {
                self.bump();
                let at = self.pos;
                let i = self.number()?;
                if i == 0 || i as usize > self.vocab.relations().len() {
                    return Err(Error::Syntax { pos: at, msg: format!("unknown symbol R{i}") });
                }
                let rel = i as usize - 1;
                self.expect(b'(')?;
                let mut args = vec![self.var()?];
                while self.peek() == Some(b',') {
                    self.bump();
                    args.push(self.var()?);
                }
                self.expect(b')')?;
                let arity = self.vocab.relation_arity(rel).unwrap();
                if args.len() != arity {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: format!("R{i} expects {arity} arguments, got {}", args.len()),
                    });
                }
                Ok(Formula::Atom { rel, args, positive })
            }
            Some(b'x') => {
                let l = self.var()?;
                self.expect(b'=')?;
                let r = self.var()?;
                Ok(Formula::Eq { left: l, right: r, positive })
            }
            Some(c) => self.err(format!("expected an atom, found '{}'", c as char)),
            None => self.err("expected an atom, found end of input"),
        }
    }
}

/// Parse a formula and check it is well formed for the dialect.
pub fn parse(text: &str, vocab: &Vocabulary, dialect: Dialect) -> Result<Formula> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vocab, dialect };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    check_well_formed(&f, vocab, dialect)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn voc(k: usize) -> Vocabulary {
        Vocabulary::unary(k).unwrap()
    }

    #[test]
    fn parse_examples() {
        let v = voc(2);
        let f = parse("<1>(p1 & !p2)", &v, Dialect::Mlu).unwrap();
        assert_eq!(
            f,
            Formula::dia(1, Formula::and(Formula::lit(0, true), Formula::lit(1, false)))
        );
        let g = parse("[3](p1 | p2)", &v, Dialect::Gmlu).unwrap();
        assert_eq!(
            g,
            Formula::boxm(3, Formula::or(Formula::lit(0, true), Formula::lit(1, true)))
        );
    }

    #[test]
    fn sugar_and_canonical_form() {
        let v = voc(1);
        assert_eq!(
            parse("<>p1", &v, Dialect::Mlu).unwrap(),
            parse("<1>p1", &v, Dialect::Mlu).unwrap()
        );
        assert_eq!(render(&parse("[]p1", &v, Dialect::Mlu).unwrap()), "[1]p1");
    }

    #[test]
    fn literal_outside_modality_rejected() {
        let v = voc(1);
        let e = parse("p1 & <1>p1", &v, Dialect::Gmlu).unwrap_err();
        assert!(matches!(e, Error::WellFormedness(_)), "{e}");
    }

    #[test]
    fn mlu_rejects_higher_grades() {
        let v = voc(1);
        assert!(parse("<2>p1", &v, Dialect::Mlu).is_err());
        assert!(parse("<2>p1", &v, Dialect::Gmlu).is_ok());
    }

    #[test]
    fn unknown_symbols_rejected() {
        let v = voc(1);
        assert!(parse("<1>p2", &v, Dialect::Mlu).is_err());
        let rv = Vocabulary::relational(&[2]).unwrap();
        assert!(parse("E x1 R2(x1,x1)", &rv, Dialect::Fo).is_err());
        assert!(parse("E x1 R1(x1)", &rv, Dialect::Fo).is_err());
    }

    #[test]
    fn size_rules() {
        let v = voc(2);
        assert_eq!(size(&Formula::lit(0, true)), 1);
        assert_eq!(size(&Formula::dia(3, Formula::lit(0, true))), 4);
        assert_eq!(
            size(&Formula::and(Formula::lit(0, true), Formula::lit(1, false))),
            3
        );
        let f = parse("E x1 A x2 (R1(x1,x2) | x1=x2)", &Vocabulary::relational(&[2]).unwrap(), Dialect::Fo)
            .unwrap();
        assert_eq!(size(&f), 5);
        let _ = v;
    }

    #[test]
    fn dual_negation() {
        let f = Formula::dia(1, Formula::lit(0, true));
        assert_eq!(dual_negate(&f), Formula::boxm(1, Formula::lit(0, false)));
        let g = Formula::boxm(2, Formula::or(Formula::lit(0, true), Formula::lit(1, false)));
        assert_eq!(dual_negate(&dual_negate(&g)), g);
        assert_eq!(size(&dual_negate(&g)), size(&g));
    }

    #[test]
    fn type_formula_sizes() {
        for k in 1..=4 {
            for pi in OneType::all(k) {
                assert_eq!(size(&type_formula(&pi)), 2 * k as u64 - 1);
            }
        }
        // k=2, type {p1, !p2}
        let pi = OneType::from_index(2, 0b10);
        assert_eq!(
            type_formula(&pi),
            Formula::and(Formula::lit(0, true), Formula::lit(1, false))
        );
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Formula::dia(2, Formula::lit(0, true))), "<2>p1");
        assert_eq!(
            render(&Formula::boxm(1, Formula::or(Formula::lit(0, true), Formula::lit(0, false)))),
            "[1](p1 | !p1)"
        );
    }

    #[test]
    fn render_parse_roundtrip_nesting() {
        let v = voc(2);
        for s in [
            "<1>((p1 | p2) & !p1)",
            "<1>p1 & <1>p2 & [1]p1",
            "<1>p1 | <1>(p1 & (p2 | !p1))",
            "[2](p1 | p2 | !p1)",
        ] {
            let f = parse(s, &v, Dialect::Gmlu).unwrap();
            let canon = render(&f);
            assert_eq!(parse(&canon, &v, Dialect::Gmlu).unwrap(), f, "via {canon}");
        }
        let rv = Vocabulary::relational(&[2]).unwrap();
        for s in ["E x1 A x2 (R1(x1,x2) & !x1=x2)", "A x1 (!R1(x1,x1) | E x2 R1(x1,x2))"] {
            let f = parse(s, &rv, Dialect::Fo).unwrap();
            assert_eq!(parse(&render(&f), &rv, Dialect::Fo).unwrap(), f);
        }
    }

    #[test]
    fn one_type_order() {
        // all-positive type first, all-negative last
        let ts: Vec<String> = OneType::all(1).map(|t| t.render()).collect();
        assert_eq!(ts, vec!["p1", "!p1"]);
        let ts2: Vec<String> = OneType::all(2).map(|t| t.render()).collect();
        assert_eq!(ts2[0], "p1&p2");
        assert_eq!(ts2[3], "!p1&!p2");
    }

    #[test]
    fn free_variable_tracking() {
        let rv = Vocabulary::relational(&[2]).unwrap();
        let f = parse("E x1 R1(x1,x2)", &rv, Dialect::Fo).unwrap();
        assert_eq!(free_vars(&f), 0b10);
        let g = parse("E x1 A x2 R1(x1,x2)", &rv, Dialect::Fo).unwrap();
        assert_eq!(free_vars(&g), 0);
    }
}
