use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// A generator or its inverse, numbered `2·gen + inverse` so that letters
/// order as `a < a⁻¹ < b < b⁻¹ < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(u32);

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter(((gen as u32) << 1) | inverse as u32)
    }

    pub fn gen(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn shift(self, offset: usize) -> Self {
        Letter(self.0 + 2 * offset as u32)
    }

    pub fn unshift(self, offset: usize) -> Self {
        Letter(self.0 - 2 * offset as u32)
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

pub type Word = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Appends `l` to a reduced word, cancelling if possible.
pub fn push_reduced(w: &mut Word, l: Letter) {
    if w.last() == Some(&l.inverse()) {
        w.pop();
    } else {
        w.push(l);
    }
}

pub fn reduce_word(w: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        push_reduced(&mut out, l);
    }
    out
}

/// Groups with a fixed generating set: free, free abelian, and finite direct
/// and free products of these.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MarkedGroup {
    Free(Vec<String>),
    FreeAbelian(Vec<String>),
    Direct(Vec<MarkedGroup>),
    FreeProduct(Vec<MarkedGroup>),
}

/// Canonical normal form of a group element. Letters inside a factor are
/// numbered locally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Elem {
    /// Freely reduced word.
    Word(Word),
    /// Exponent vector.
    Vector(Vec<i64>),
    /// One component per direct factor.
    Tuple(Vec<Elem>),
    /// Alternating nontrivial syllables `(factor, element)`.
    Syllables(Vec<(usize, Elem)>),
}

impl MarkedGroup {
    pub fn free(names: &[&str]) -> Self {
        MarkedGroup::Free(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn free_abelian(names: &[&str]) -> Self {
        MarkedGroup::FreeAbelian(names.iter().map(|s| s.to_string()).collect())
    }

    /// Checks shape constraints and that generator names are distinct.
    pub fn validate(&self) -> Result<(), GroupError> {
        self.validate_shape()?;
        let mut seen = HashSet::new();
        for n in self.names() {
            if !seen.insert(n.clone()) {
                return Err(GroupError::NameCollision(n));
            }
        }
        Ok(())
    }

    fn validate_shape(&self) -> Result<(), GroupError> {
        match self {
            MarkedGroup::Free(n) | MarkedGroup::FreeAbelian(n) => {
                for name in n {
                    if !valid_name(name) {
                        return Err(GroupError::Invalid(format!("bad generator name {name:?}")));
                    }
                }
                Ok(())
            }
            MarkedGroup::Direct(fs) | MarkedGroup::FreeProduct(fs) => {
                if fs.len() < 2 {
                    return Err(GroupError::Invalid("products need at least two factors".into()));
                }
                fs.iter().try_for_each(MarkedGroup::validate_shape)
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            MarkedGroup::Free(n) | MarkedGroup::FreeAbelian(n) => n.len(),
            MarkedGroup::Direct(fs) | MarkedGroup::FreeProduct(fs) => fs.iter().map(|f| f.rank()).sum(),
        }
    }

    pub fn factors(&self) -> &[MarkedGroup] {
        match self {
            MarkedGroup::Direct(fs) | MarkedGroup::FreeProduct(fs) => fs,
            _ => &[],
        }
    }

    /// Global generator offset of each factor.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.factors()
            .iter()
            .map(|f| {
                let o = acc;
                acc += f.rank();
                o
            })
            .collect()
    }

    /// Factor holding global generator `gen`, and its local index there.
    pub fn locate(&self, gen: usize) -> (usize, usize) {
        let mut acc = 0;
        for (i, f) in self.factors().iter().enumerate() {
            let r = f.rank();
            if gen < acc + r {
                return (i, gen - acc);
            }
            acc += r;
        }
        panic!("generator {gen} out of range")
    }

    pub fn names(&self) -> Vec<String> {
        match self {
            MarkedGroup::Free(n) | MarkedGroup::FreeAbelian(n) => n.clone(),
            MarkedGroup::Direct(fs) | MarkedGroup::FreeProduct(fs) => {
                fs.iter().flat_map(|f| f.names()).collect()
            }
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }

    /// A copy with every generator name suffixed.
    pub fn renamed(&self, suffix: &str) -> MarkedGroup {
        self.map_names(&|n| format!("{n}{suffix}"))
    }

    pub fn map_names(&self, f: &dyn Fn(&str) -> String) -> MarkedGroup {
        match self {
            MarkedGroup::Free(n) => MarkedGroup::Free(n.iter().map(|s| f(s)).collect()),
            MarkedGroup::FreeAbelian(n) => MarkedGroup::FreeAbelian(n.iter().map(|s| f(s)).collect()),
            MarkedGroup::Direct(fs) => MarkedGroup::Direct(fs.iter().map(|g| g.map_names(f)).collect()),
            MarkedGroup::FreeProduct(fs) => {
                MarkedGroup::FreeProduct(fs.iter().map(|g| g.map_names(f)).collect())
            }
        }
    }

    /// Same shape, ignoring generator names.
    pub fn same_shape(&self, other: &MarkedGroup) -> bool {
        match (self, other) {
            (MarkedGroup::Free(a), MarkedGroup::Free(b)) => a.len() == b.len(),
            (MarkedGroup::FreeAbelian(a), MarkedGroup::FreeAbelian(b)) => a.len() == b.len(),
            (MarkedGroup::Direct(a), MarkedGroup::Direct(b))
            | (MarkedGroup::FreeProduct(a), MarkedGroup::FreeProduct(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MarkedGroup::Free(n) => format!("free({})", n.join(", ")),
            MarkedGroup::FreeAbelian(n) => format!("abelian({})", n.join(", ")),
            MarkedGroup::Direct(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.describe()).collect();
                format!("direct({})", parts.join(", "))
            }
            MarkedGroup::FreeProduct(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.describe()).collect();
                format!("freeprod({})", parts.join(", "))
            }
        }
    }

    pub fn identity(&self) -> Elem {
        match self {
            MarkedGroup::Free(_) => Elem::Word(Vec::new()),
            MarkedGroup::FreeAbelian(n) => Elem::Vector(vec![0; n.len()]),
            MarkedGroup::Direct(fs) => Elem::Tuple(fs.iter().map(|f| f.identity()).collect()),
            MarkedGroup::FreeProduct(_) => Elem::Syllables(Vec::new()),
        }
    }

    pub fn is_identity(&self, e: &Elem) -> bool {
        match e {
            Elem::Word(w) => w.is_empty(),
            Elem::Vector(v) => v.iter().all(|&x| x == 0),
            Elem::Tuple(cs) => cs.iter().zip(self.factors()).all(|(c, f)| f.is_identity(c)),
            Elem::Syllables(s) => s.is_empty(),
        }
    }

    /// Whether `e` is a well-formed normal form of this group.
    pub fn owns(&self, e: &Elem) -> bool {
        match (self, e) {
            (MarkedGroup::Free(n), Elem::Word(w)) => {
                w.iter().all(|l| l.gen() < n.len()) && w.windows(2).all(|p| p[0] != p[1].inverse())
            }
            (MarkedGroup::FreeAbelian(n), Elem::Vector(v)) => v.len() == n.len(),
            (MarkedGroup::Direct(fs), Elem::Tuple(cs)) => {
                fs.len() == cs.len() && fs.iter().zip(cs).all(|(f, c)| f.owns(c))
            }
            (MarkedGroup::FreeProduct(fs), Elem::Syllables(s)) => {
                s.iter().all(|(i, x)| *i < fs.len() && fs[*i].owns(x) && !fs[*i].is_identity(x))
                    && s.windows(2).all(|p| p[0].0 != p[1].0)
            }
            _ => false,
        }
    }

    pub fn check(&self, e: &Elem) -> Result<(), GroupError> {
        if self.owns(e) {
            Ok(())
        } else {
            Err(GroupError::Mismatch(self.describe()))
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (MarkedGroup::Free(_), Elem::Word(x), Elem::Word(y)) => {
                let mut out = x.clone();
                let mut i = 0;
                while i < y.len() && out.last() == Some(&y[i].inverse()) {
                    out.pop();
                    i += 1;
                }
                out.extend_from_slice(&y[i..]);
                Elem::Word(out)
            }
            (MarkedGroup::FreeAbelian(_), Elem::Vector(x), Elem::Vector(y)) => {
                Elem::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (MarkedGroup::Direct(fs), Elem::Tuple(x), Elem::Tuple(y)) => Elem::Tuple(
                fs.iter()
                    .zip(x.iter().zip(y))
                    .map(|(f, (p, q))| f.mul(p, q))
                    .collect(),
            ),
            (MarkedGroup::FreeProduct(fs), Elem::Syllables(x), Elem::Syllables(y)) => {
                let mut out = x.clone();
                let mut rest = y.iter();
                for (i, s) in rest.by_ref() {
                    match out.last_mut() {
                        Some((j, t)) if j == i => {
                            let m = fs[*i].mul(t, s);
                            if fs[*i].is_identity(&m) {
                                out.pop();
                                continue;
                            }
                            *t = m;
                            break;
                        }
                        _ => {
                            out.push((*i, s.clone()));
                            break;
                        }
                    }
                }
                out.extend(rest.cloned());
                Elem::Syllables(out)
            }
            _ => panic!("element shape does not match {}", self.describe()),
        }
    }

    pub fn inv(&self, e: &Elem) -> Elem {
        match (self, e) {
            (MarkedGroup::Free(_), Elem::Word(w)) => Elem::Word(invert_word(w)),
            (MarkedGroup::FreeAbelian(_), Elem::Vector(v)) => Elem::Vector(v.iter().map(|x| -x).collect()),
            (MarkedGroup::Direct(fs), Elem::Tuple(cs)) => {
                Elem::Tuple(fs.iter().zip(cs).map(|(f, c)| f.inv(c)).collect())
            }
            (MarkedGroup::FreeProduct(fs), Elem::Syllables(s)) => {
                Elem::Syllables(s.iter().rev().map(|(i, x)| (*i, fs[*i].inv(x))).collect())
            }
            _ => panic!("element shape does not match {}", self.describe()),
        }
    }

    pub fn pow(&self, e: &Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(e) } else { e.clone() };
        let mut out = self.identity();
        for _ in 0..k.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        out
    }

    pub fn conj(&self, e: &Elem, by: &Elem) -> Elem {
        self.mul(&self.mul(&self.inv(by), e), by)
    }

    pub fn commutator(&self, a: &Elem, b: &Elem) -> Elem {
        let ab = self.mul(a, b);
        let ab_ai = self.mul(&ab, &self.inv(a));
        self.mul(&ab_ai, &self.inv(b))
    }

    /// The element of a single global letter.
    pub fn letter(&self, l: Letter) -> Elem {
        match self {
            MarkedGroup::Free(_) => Elem::Word(vec![l]),
            MarkedGroup::FreeAbelian(n) => {
                let mut v = vec![0; n.len()];
                v[l.gen()] = if l.is_inverse() { -1 } else { 1 };
                Elem::Vector(v)
            }
            MarkedGroup::Direct(fs) => {
                let (i, local) = self.locate(l.gen());
                let lo = Letter::new(local, l.is_inverse());
                Elem::Tuple(
                    fs.iter()
                        .enumerate()
                        .map(|(j, f)| if j == i { f.letter(lo) } else { f.identity() })
                        .collect(),
                )
            }
            MarkedGroup::FreeProduct(fs) => {
                let (i, local) = self.locate(l.gen());
                Elem::Syllables(vec![(i, fs[i].letter(Letter::new(local, l.is_inverse())))])
            }
        }
    }

    pub fn generator(&self, gen: usize) -> Elem {
        self.letter(Letter::new(gen, false))
    }

    pub fn eval(&self, w: &[Letter]) -> Elem {
        w.iter().fold(self.identity(), |acc, &l| self.mul(&acc, &self.letter(l)))
    }

    /// The shortlex-least geodesic word of `e` over the global generators.
    pub fn word(&self, e: &Elem) -> Word {
        let mut out = Vec::new();
        self.word_into(e, 0, &mut out);
        out
    }

    fn word_into(&self, e: &Elem, offset: usize, out: &mut Word) {
        match (self, e) {
            (MarkedGroup::Free(_), Elem::Word(w)) => out.extend(w.iter().map(|l| l.shift(offset))),
            (MarkedGroup::FreeAbelian(_), Elem::Vector(v)) => {
                for (i, &x) in v.iter().enumerate() {
                    let l = Letter::new(i + offset, x < 0);
                    out.extend(std::iter::repeat_n(l, x.unsigned_abs() as usize));
                }
            }
            (MarkedGroup::Direct(fs), Elem::Tuple(cs)) => {
                let offs = self.offsets();
                for ((f, c), o) in fs.iter().zip(cs).zip(offs) {
                    f.word_into(c, offset + o, out);
                }
            }
            (MarkedGroup::FreeProduct(fs), Elem::Syllables(s)) => {
                let offs = self.offsets();
                for (i, x) in s {
                    fs[*i].word_into(x, offset + offs[*i], out);
                }
            }
            _ => panic!("element shape does not match {}", self.describe()),
        }
    }

    pub fn length(&self, e: &Elem) -> usize {
        match (self, e) {
            (MarkedGroup::Free(_), Elem::Word(w)) => w.len(),
            (MarkedGroup::FreeAbelian(_), Elem::Vector(v)) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            (MarkedGroup::Direct(fs), Elem::Tuple(cs)) => fs.iter().zip(cs).map(|(f, c)| f.length(c)).sum(),
            (MarkedGroup::FreeProduct(fs), Elem::Syllables(s)) => s.iter().map(|(i, x)| fs[*i].length(x)).sum(),
            _ => panic!("element shape does not match {}", self.describe()),
        }
    }

    /// Shortlex comparison of canonical words.
    pub fn shortlex_cmp(&self, a: &Elem, b: &Elem) -> Ordering {
        self.length(a)
            .cmp(&self.length(b))
            .then_with(|| self.word(a).cmp(&self.word(b)))
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let names = self.names();
        if l.is_inverse() {
            format!("{}^-1", names[l.gen()])
        } else {
            names[l.gen()].clone()
        }
    }

    pub fn format(&self, e: &Elem) -> String {
        format_word(&self.names(), &self.word(e))
    }

    pub fn parse(&self, s: &str) -> Result<Elem, GroupError> {
        let w = parse_word(&self.names(), s)?;
        Ok(self.eval(&w))
    }

    pub fn random_word<R: Rng>(&self, rng: &mut R, len: usize) -> Word {
        let r = self.rank();
        if r == 0 {
            return Word::new();
        }
        (0..len)
            .map(|_| Letter::new(rng.gen_range(0..r), rng.gen_bool(0.5)))
            .collect()
    }

    pub fn random_elem<R: Rng>(&self, rng: &mut R, len: usize) -> Elem {
        let w = self.random_word(rng, len);
        self.eval(&w)
    }

    /// Each generator as an element, in global order.
    pub fn generators(&self) -> Vec<Elem> {
        (0..self.rank()).map(|g| self.generator(g)).collect()
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && name != "1"
}

/// Prints a word as `a^2*b^-1`; the empty word prints as `1`.
pub fn format_word(names: &[String], w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let k = (j - i) as i64 * if w[i].is_inverse() { -1 } else { 1 };
        let name = &names[w[i].gen()];
        parts.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
        i = j;
    }
    parts.join("*")
}

struct Parser<'a> {
    names: &'a [String],
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> GroupError {
        GroupError::Parse {
            input: self.input.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), GroupError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn word(&mut self) -> Result<Word, GroupError> {
        let mut out = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            for l in f {
                push_reduced(&mut out, l);
            }
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Word, GroupError> {
        let atom = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(atom);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let k: i64 = self.input[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected integer exponent"))?;
        let base = if k < 0 { invert_word(&atom) } else { atom };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            for &l in &base {
                push_reduced(&mut out, l);
            }
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Word, GroupError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(b',')?;
                let y = self.word()?;
                self.expect(b']')?;
                let mut out = x.clone();
                for l in y.iter().copied().chain(invert_word(&x)).chain(invert_word(&y)) {
                    push_reduced(&mut out, l);
                }
                Ok(out)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_'
                        || self.bytes[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = &self.input[start..self.pos];
                let g = self
                    .names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))?;
                Ok(vec![Letter::new(g, false)])
            }
            _ => Err(self.err("expected generator, '1', '(' or '['")),
        }
    }
}

/// Parses products of generators, powers, parentheses and commutators
/// `[x,y] = x*y*x^-1*y^-1` into a freely reduced word.
pub fn parse_word(names: &[String], s: &str) -> Result<Word, GroupError> {
    let mut p = Parser {
        names,
        input: s,
        bytes: s.as_bytes(),
        pos: 0,
    };
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

impl fmt::Display for MarkedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}
