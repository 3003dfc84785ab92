//! Quantifier-free formulas in one variable and their realizations.
//!
//! A realization is stored canonically as the sorted list of its connected
//! components, each a point or an interval with algebraic or infinite ends.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{sign, UPoly};
use super::roots::{real_roots, AlgNum};
use super::thom::ThomEncoding;
use crate::error::{Error, Result};

/// Relation of an atom `P rel 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Gt,
    Ge,
    Eq,
    Le,
    Lt,
}

impl Rel {
    pub fn holds(self, s: i8) -> bool {
        match self {
            Rel::Gt => s > 0,
            Rel::Ge => s >= 0,
            Rel::Eq => s == 0,
            Rel::Le => s <= 0,
            Rel::Lt => s < 0,
        }
    }

    pub fn is_weak(self) -> bool {
        matches!(self, Rel::Ge | Rel::Eq | Rel::Le)
    }

    fn symbol(self) -> &'static str {
        match self {
            Rel::Gt => ">",
            Rel::Ge => ">=",
            Rel::Eq => "=",
            Rel::Le => "<=",
            Rel::Lt => "<",
        }
    }
}

/// `poly rel 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub poly: UPoly,
    pub rel: Rel,
}

/// Formula without negation. `And([])` is true and `Or([])` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(poly: UPoly, rel: Rel) -> Self {
        Formula::Atom(Atom { poly, rel })
    }

    pub fn truth() -> Self {
        Formula::And(Vec::new())
    }

    pub fn falsity() -> Self {
        Formula::Or(Vec::new())
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(vec![self, other])
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(vec![self, other])
    }

    pub fn parse(s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, pos: 0 };
        let f = p.formula()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("unexpected `{}`", p.toks[p.pos])));
        }
        Ok(f)
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|f| f.collect_atoms(out)),
        }
    }

    /// Truth value given the sign of every atom, in [`Formula::atoms`] order.
    fn eval_signs(&self, signs: &mut impl Iterator<Item = i8>) -> bool {
        match self {
            Formula::Atom(a) => a.rel.holds(signs.next().expect("one sign per atom")),
            // every atom must consume its sign, so no short-circuiting
            Formula::And(v) => v
                .iter()
                .map(|f| f.eval_signs(signs))
                .fold(true, |acc, b| acc & b),
            Formula::Or(v) => v
                .iter()
                .map(|f| f.eval_signs(signs))
                .fold(false, |acc, b| acc | b),
        }
    }

    /// Disjunctive normal form as a list of conjunctions of atoms.
    pub fn dnf(&self) -> Vec<Vec<Atom>> {
        match self {
            Formula::Atom(a) => vec![vec![a.clone()]],
            Formula::Or(v) => v.iter().flat_map(|f| f.dnf()).collect(),
            Formula::And(v) => {
                let mut acc: Vec<Vec<Atom>> = vec![Vec::new()];
                for f in v {
                    let d = f.dnf();
                    acc = acc
                        .iter()
                        .flat_map(|c| {
                            d.iter().map(move |e| {
                                let mut c = c.clone();
                                c.extend(e.iter().cloned());
                                c
                            })
                        })
                        .collect();
                }
                acc
            }
        }
    }

    /// Whether the formula uses weak atoms only (no strict inequality).
    pub fn is_weak(&self) -> bool {
        self.atoms().iter().all(|a| a.rel.is_weak())
    }

    /// Whether the formula is a disjunction of conjunctions of weak atoms.
    pub fn is_closed_shape(&self) -> bool {
        match self {
            Formula::Or(v) => v.iter().all(|c| match c {
                Formula::And(atoms) => atoms
                    .iter()
                    .all(|a| matches!(a, Formula::Atom(a) if a.rel.is_weak())),
                _ => false,
            }),
            _ => false,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, var: &str, nested: bool) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{} {} 0", a.poly.to_string_in(var), a.rel.symbol()),
            Formula::And(v) if v.is_empty() => write!(f, "0 = 0"),
            Formula::Or(v) if v.is_empty() => write!(f, "1 = 0"),
            Formula::And(v) | Formula::Or(v) if v.len() == 1 => v[0].fmt_prec(f, var, nested),
            Formula::And(v) | Formula::Or(v) => {
                let word = if matches!(self, Formula::And(_)) {
                    " and "
                } else {
                    " or "
                };
                if nested {
                    f.write_str("(")?;
                }
                for (k, g) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(word)?;
                    }
                    g.fmt_prec(f, var, true)?;
                }
                if nested {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, "X", false)
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Formula::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Var,
    Op(char),
    Rel(Rel),
    And,
    Or,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Var => f.write_str("variable"),
            Tok::Op(c) => write!(f, "{c}"),
            Tok::Rel(r) => f.write_str(r.symbol()),
            Tok::And => f.write_str("and"),
            Tok::Or => f.write_str("or"),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut var: Option<char> = None;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&text)?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "and" | "AND" => out.push(Tok::And),
                "or" | "OR" => out.push(Tok::Or),
                w if w.len() == 1 => {
                    let v = w.chars().next().expect("one char");
                    if !matches!(v, 'X' | 'x' | 'T' | 't') {
                        return Err(Error::Parse(format!("unknown variable `{w}`")));
                    }
                    if var.is_some_and(|u| u != v) {
                        return Err(Error::Parse("formulas use a single variable".into()));
                    }
                    var = Some(v);
                    out.push(Tok::Var);
                }
                w => return Err(Error::Parse(format!("unknown word `{w}`"))),
            }
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '>' || c == '<' {
            let weak = chars.get(i + 1) == Some(&'=');
            out.push(Tok::Rel(match (c, weak) {
                ('>', true) => Rel::Ge,
                ('>', false) => Rel::Gt,
                ('<', true) => Rel::Le,
                _ => Rel::Lt,
            }));
            i += if weak { 2 } else { 1 };
        } else if c == '=' {
            out.push(Tok::Rel(Rel::Eq));
            i += if chars.get(i + 1) == Some(&'=') { 2 } else { 1 };
        } else if c == '&' && chars.get(i + 1) == Some(&'&') {
            out.push(Tok::And);
            i += 2;
        } else if c == '|' && chars.get(i + 1) == Some(&'|') {
            out.push(Tok::Or);
            i += 2;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number `{text}`"));
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(BigRational::new(
        n,
        num_traits::pow(BigInt::from(10), frac.len()),
    ))
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conj()?];
        while self.eat(&Tok::Or) {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one")
        } else {
            Formula::Or(parts)
        })
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.fprimary()?];
        while self.eat(&Tok::And) {
            parts.push(self.fprimary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one")
        } else {
            Formula::And(parts)
        })
    }

    fn fprimary(&mut self) -> Result<Formula> {
        let start = self.pos;
        match self.atom() {
            Ok(a) => Ok(a),
            Err(atom_err) => {
                self.pos = start;
                if self.eat(&Tok::Op('(')) {
                    let f = self.formula()?;
                    if !self.eat(&Tok::Op(')')) {
                        return Err(Error::Parse("missing `)`".into()));
                    }
                    Ok(f)
                } else {
                    Err(atom_err)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let lhs = self.expr()?;
        let rel = match self.peek() {
            Some(Tok::Rel(r)) => *r,
            Some(t) => return Err(Error::Parse(format!("expected a relation, found `{t}`"))),
            None => return Err(Error::Parse("expected a relation".into())),
        };
        self.pos += 1;
        let rhs = self.expr()?;
        Ok(Formula::atom(&lhs - &rhs, rel))
    }

    fn expr(&mut self) -> Result<UPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Op('+')) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Op('-')) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<UPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Op('*')) {
                acc = &acc * &self.unary()?;
            } else if self.eat(&Tok::Op('/')) {
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Parse("division only by nonzero constants".into()));
                }
                acc = acc.scale(&d.leading().recip());
            } else if matches!(self.peek(), Some(Tok::Var) | Some(Tok::Op('('))) {
                // implicit product such as `2X` or `2(X+1)`
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<UPoly> {
        if self.eat(&Tok::Op('-')) {
            return Ok(-&self.unary()?);
        }
        if self.eat(&Tok::Op('+')) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<UPoly> {
        let base = self.primary()?;
        if self.eat(&Tok::Op('^')) {
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) if n.is_integer() && n.numer() <= &BigInt::from(1000) => {
                    let e: u32 = n
                        .numer()
                        .try_into()
                        .map_err(|_| Error::Parse("bad exponent".into()))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse(
                    "exponent must be a small nonnegative integer".into(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<UPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(UPoly::constant(n))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(UPoly::var())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::Op(')')) {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected `{t}`"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub(crate) fn parse_poly(s: &str) -> Result<UPoly> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("unexpected `{}`", p.toks[p.pos])));
    }
    Ok(e)
}

/// End of a component.
#[derive(Clone, Debug)]
pub enum Bound {
    Infinite,
    Finite { at: ThomEncoding, closed: bool },
}

impl Bound {
    fn same(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::Infinite, Bound::Infinite) => true,
            (Bound::Finite { at: a, closed: ca }, Bound::Finite { at: b, closed: cb }) => {
                ca == cb && a.compare(b) == Ordering::Equal
            }
            _ => false,
        }
    }

    pub fn value(&self) -> Option<&ThomEncoding> {
        match self {
            Bound::Infinite => None,
            Bound::Finite { at, .. } => Some(at),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Finite { closed: true, .. })
    }
}

/// A connected subset of the line: a point or an interval.
#[derive(Clone, Debug)]
pub struct Component {
    pub lo: Bound,
    pub hi: Bound,
}

impl Component {
    pub fn is_point(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Bound::Finite { at: a, .. }, Bound::Finite { at: b, .. }) => {
                a.compare(b) == Ordering::Equal
            }
            _ => false,
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self.lo, Bound::Infinite) && !matches!(self.hi, Bound::Infinite)
    }

    pub fn is_closed(&self) -> bool {
        self.lo.is_closed() && self.hi.is_closed()
    }
}

fn fmt_bound(b: &Bound) -> String {
    match b {
        Bound::Infinite => "inf".into(),
        Bound::Finite { at, .. } => match at.as_rational() {
            Some(c) => super::poly::fmt_rational(&c),
            None => format!("{} (~{:.6})", at, at.approx()),
        },
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", fmt_bound(&self.lo));
        }
        let l = if self.lo.is_closed() { '[' } else { '(' };
        let r = if self.hi.is_closed() { ']' } else { ')' };
        let lo = match self.lo {
            Bound::Infinite => "-inf".into(),
            _ => fmt_bound(&self.lo),
        };
        write!(f, "{l}{lo}, {}{r}", fmt_bound(&self.hi))
    }
}

/// Canonical decomposition of a subset of the line into sorted components.
#[derive(Clone, Debug, Default)]
pub struct Realization {
    components: Vec<Component>,
}

impl PartialEq for Realization {
    fn eq(&self, other: &Self) -> bool {
        self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.lo.same(&b.lo) && a.hi.same(&b.hi))
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" u "))
    }
}

impl Realization {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.components.iter().all(Component::is_bounded)
    }

    /// First finite endpoint that is a limit point but not a member.
    pub fn non_closed_witness(&self) -> Option<&ThomEncoding> {
        self.components.iter().find_map(|c| {
            [&c.lo, &c.hi].into_iter().find_map(|b| match b {
                Bound::Finite { at, closed: false } => Some(at),
                _ => None,
            })
        })
    }

    pub fn is_closed(&self) -> bool {
        self.non_closed_witness().is_none()
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Whether the rational `x` lies in the set.
    pub fn contains_rational(&self, x: &BigRational) -> bool {
        self.components.iter().any(|c| {
            let above_lo = match &c.lo {
                Bound::Infinite => true,
                Bound::Finite { at, closed } => match at.cmp_rational(x) {
                    Ordering::Less => true,
                    Ordering::Equal => *closed,
                    Ordering::Greater => false,
                },
            };
            let below_hi = match &c.hi {
                Bound::Infinite => true,
                Bound::Finite { at, closed } => match at.cmp_rational(x) {
                    Ordering::Greater => true,
                    Ordering::Equal => *closed,
                    Ordering::Less => false,
                },
            };
            above_lo && below_hi
        })
    }
}

/// The sign cells of a family of polynomials: the sorted distinct roots of
/// all of them, and a rational sample point in every open gap.
pub(crate) struct CellDecomposition {
    square_free: UPoly,
    roots: Vec<AlgNum>,
    /// `samples[k]` lies in the gap just below `roots[k]`; the last lies above every root.
    pub samples: Vec<BigRational>,
}

impl CellDecomposition {
    pub(crate) fn new<'a>(polys: impl IntoIterator<Item = &'a UPoly>) -> Self {
        let mut prod = UPoly::one();
        for p in polys {
            if !p.is_constant() {
                prod = &prod * &p.square_free();
            }
        }
        let sf = prod.square_free();
        let mut nums: Vec<AlgNum> = real_roots(&sf).expect("nonzero product");
        let mut samples = Vec::with_capacity(nums.len() + 1);
        if nums.is_empty() {
            samples.push(BigRational::zero());
        } else {
            samples.push(nums[0].interval().lo() - BigRational::one());
            for k in 0..nums.len() - 1 {
                let (a, b) = nums.split_at_mut(k + 1);
                samples.push(a[k].rational_between(&mut b[0]));
            }
            samples.push(nums[nums.len() - 1].interval().hi() + BigRational::one());
        }
        Self {
            square_free: sf,
            roots: nums,
            samples,
        }
    }

    /// Thom encoding of the `i`-th root.
    pub(crate) fn root(&self, i: usize) -> ThomEncoding {
        ThomEncoding::from_root(self.square_free.clone(), self.roots[i].clone())
    }

    /// Cells in order: gap, root, gap, ..., root, gap.
    pub(crate) fn cell_count(&self) -> usize {
        2 * self.roots.len() + 1
    }

    /// Sign of `p` on cell `k`.
    pub(crate) fn sign(&self, p: &UPoly, k: usize) -> i8 {
        if k.is_multiple_of(2) {
            p.sign_at(&self.samples[k / 2])
        } else {
            self.roots[k / 2].clone().sign_of(p)
        }
    }
}

/// Realization of a formula as a canonical union of components.
pub fn realize(f: &Formula) -> Realization {
    let atoms = f.atoms();
    let cells = CellDecomposition::new(atoms.iter().map(|a| &a.poly));
    let member: Vec<bool> = (0..cells.cell_count())
        .map(|k| {
            let signs: Vec<i8> = atoms.iter().map(|a| cells.sign(&a.poly, k)).collect();
            f.eval_signs(&mut signs.into_iter())
        })
        .collect();
    from_cells(&cells, &member)
}

fn from_cells(cells: &CellDecomposition, member: &[bool]) -> Realization {
    let n = member.len();
    let mut components = Vec::new();
    let mut k = 0;
    while k < n {
        if !member[k] {
            k += 1;
            continue;
        }
        let start = k;
        while k + 1 < n && member[k + 1] {
            k += 1;
        }
        let end = k;
        k += 1;
        let lo = if start == 0 {
            Bound::Infinite
        } else if start % 2 == 1 {
            Bound::Finite {
                at: cells.root(start / 2),
                closed: true,
            }
        } else {
            Bound::Finite {
                at: cells.root(start / 2 - 1),
                closed: false,
            }
        };
        let hi = if end == n - 1 {
            Bound::Infinite
        } else if end % 2 == 1 {
            Bound::Finite {
                at: cells.root(end / 2),
                closed: true,
            }
        } else {
            Bound::Finite {
                at: cells.root(end / 2),
                closed: false,
            }
        };
        components.push(Component { lo, hi });
    }
    Realization { components }
}

/// Rewrites a formula with closed realization as a disjunction of
/// conjunctions of weak atoms over derivative-closed families, with the
/// same realization.
///
/// Each conjunction is handled separately: its atoms generate the family of
/// all their derivatives, every sign condition on that family realized
/// inside the conjunction is kept, and its strict signs are relaxed. On a
/// derivative-closed family the relaxed condition describes the closure of
/// the original cell, so the output realizes the closure of the input.
pub fn make_closed(theta: &Formula) -> Result<Formula> {
    let r = realize(theta);
    if let Some(w) = r.non_closed_witness() {
        let witness = match w.as_rational() {
            Some(c) => super::poly::fmt_rational(&c),
            None => format!("{w} ~ {:.6}", w.approx()),
        };
        return Err(Error::NotClosed { witness });
    }
    let mut disjuncts = Vec::new();
    for conj in theta.dnf() {
        // constant atoms decide the conjunction outright
        if conj
            .iter()
            .any(|a| a.poly.is_constant() && !a.rel.holds(sign(&a.poly.coeff(0))))
        {
            continue;
        }
        let atoms: Vec<&Atom> = conj.iter().filter(|a| !a.poly.is_constant()).collect();
        let mut family: Vec<UPoly> = Vec::new();
        for a in &atoms {
            for d in a.poly.derivatives() {
                let d = d.sign_normalized();
                if !d.is_constant() && !family.contains(&d) {
                    family.push(d);
                }
            }
        }
        if family.is_empty() {
            disjuncts.push(Formula::truth());
            continue;
        }
        let cells = CellDecomposition::new(family.iter());
        let mut kept: Vec<Vec<i8>> = Vec::new();
        for k in 0..cells.cell_count() {
            if atoms.iter().all(|a| a.rel.holds(cells.sign(&a.poly, k))) {
                let sigma: Vec<i8> = family.iter().map(|p| cells.sign(p, k)).collect();
                if !kept.contains(&sigma) {
                    kept.push(sigma);
                }
            }
        }
        for sigma in kept {
            let relaxed = family
                .iter()
                .zip(&sigma)
                .map(|(p, &s)| {
                    let rel = match s {
                        0 => Rel::Eq,
                        1 => Rel::Ge,
                        _ => Rel::Le,
                    };
                    Formula::atom(p.clone(), rel)
                })
                .collect();
            disjuncts.push(Formula::And(relaxed));
        }
    }
    Ok(Formula::Or(disjuncts))
}

/// `[-radius, radius]` as a formula.
pub fn ball(radius: &BigRational) -> Formula {
    Formula::atom(
        &UPoly::constant(radius * radius) - &UPoly::var().pow(2),
        Rel::Ge,
    )
}

/// `P - t <= 0` for rational `t`.
pub fn sublevel(p: &UPoly, t: &BigRational) -> Formula {
    Formula::atom(p - &UPoly::constant(t.clone()), Rel::Le)
}
