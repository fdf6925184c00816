//! Weighted-graded multivariate polynomials over an exact field.
//!
//! A [`PolyRing`] is the ambient polynomial ring S = K[x_1..x_d] with positive
//! integer weights on the variables. Polynomials store their terms sorted in
//! strictly descending monomial order, so the leading term is `terms[0]` and
//! equality is structural.

use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::scalars::{Field, FieldElem};

/// Exponent vector, dense, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Componentwise quotient; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.exps.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum()
    }
}

/// Base comparison on ring monomials. Both kinds compare weighted degree first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrderKind {
    /// Weighted graded reverse lexicographic (default).
    GrevLex,
    /// Weighted graded lexicographic.
    GrLex,
}

/// Extension of the ring order to free-module monomials `(monomial, position)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleOrderKind {
    /// Twist-adjusted degree, then ring order on the monomial, then position.
    TermOverPosition,
    /// Position first, then ring order on the monomial.
    PositionOverTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub module: ModuleOrderKind,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, module: ModuleOrderKind::TermOverPosition }
    }
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::GrLex, module: ModuleOrderKind::TermOverPosition }
    }

    /// Total order on ring monomials; weighted degree first, then the tie-break.
    pub fn cmp(&self, weights: &[i64], a: &Monomial, b: &Monomial) -> Ordering {
        let da = a.weighted_degree(weights);
        let db = b.weighted_degree(weights);
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self.kind {
            OrderKind::GrevLex => {
                // last non-equal exponent: smaller exponent wins
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrLex => {
                for (x, y) in a.exps.iter().zip(&b.exps) {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[derive(Debug)]
struct PolyRingData {
    vars: Vec<String>,
    weights: Vec<i64>,
    field: Field,
    order: MonomialOrder,
}

/// The ambient weighted polynomial ring S; cheap to clone and share.
#[derive(Debug, Clone)]
pub struct PolyRing {
    data: Arc<PolyRingData>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.vars == other.data.vars
                && self.data.weights == other.data.weights
                && self.data.field == other.data.field
                && self.data.order == other.data.order)
    }
}

impl Eq for PolyRing {}

/// Degree classification of a nonzero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(i64),
    Inhomogeneous,
}

/// Polynomial with terms in strictly descending ring order; no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, FieldElem)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, FieldElem)> {
        self.terms.first()
    }
}

impl PolyRing {
    pub fn new(vars: Vec<String>, weights: Vec<i64>, field: Field, order: MonomialOrder) -> Result<PolyRing> {
        if vars.len() != weights.len() {
            return Err(AlgebraError::VariableCountMismatch { expected: vars.len(), got: weights.len() });
        }
        if let Some(w) = weights.iter().find(|w| **w <= 0) {
            return Err(AlgebraError::NonpositiveWeight(*w));
        }
        Ok(PolyRing { data: Arc::new(PolyRingData { vars, weights, field, order }) })
    }

    pub fn nvars(&self) -> usize {
        self.data.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.data.vars
    }

    pub fn weights(&self) -> &[i64] {
        &self.data.weights
    }

    pub fn field(&self) -> &Field {
        &self.data.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.data.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.data.vars.iter().position(|v| v == name)
    }

    pub fn mono_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.data.order.cmp(&self.data.weights, a, b)
    }

    pub fn mono_degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.data.weights)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        Polynomial { terms: vec![(Monomial::one(self.nvars()), self.field().one())] }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial { terms: vec![(Monomial::var(self.nvars(), i), self.field().one())] }
    }

    pub fn constant(&self, c: FieldElem) -> Polynomial {
        if self.field().is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(Monomial::one(self.nvars()), c)] }
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial { terms: vec![(m, self.field().one())] }
    }

    /// Build from arbitrary term list: merges duplicates, drops zeros, sorts.
    pub fn from_terms(&self, terms: Vec<(Monomial, FieldElem)>) -> Polynomial {
        let field = self.field();
        let mut terms = terms;
        terms.sort_by(|a, b| self.mono_cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let field = self.field();
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            match self.mono_cmp(&f.terms[i].0, &g.terms[j].0) {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(g.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&f.terms[i].1, &g.terms[j].1);
                    if !field.is_zero(&c) {
                        out.push((f.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend_from_slice(&g.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        let field = self.field();
        Polynomial { terms: f.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect() }
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add(f, &self.neg(g))
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, f: &Polynomial, m: &Monomial, c: &FieldElem) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(fm, fc)| (fm.mul(m), field.mul(fc, c)))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial, c: &FieldElem) -> Polynomial {
        self.mul_term(f, &Monomial::one(self.nvars()), c)
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let mut acc = Polynomial::zero();
        for (m, c) in &g.terms {
            acc = self.add(&acc, &self.mul_term(f, m, c));
        }
        acc
    }

    /// Common weighted degree of all terms, or the inhomogeneous marker; `None` for 0.
    pub fn homogeneity(&self, f: &Polynomial) -> Option<Homogeneity> {
        let mut it = f.terms.iter();
        let first = it.next()?;
        let d = self.mono_degree(&first.0);
        for (m, _) in it {
            if self.mono_degree(m) != d {
                return Some(Homogeneity::Inhomogeneous);
            }
        }
        Some(Homogeneity::Homogeneous(d))
    }

    pub fn is_homogeneous(&self, f: &Polynomial) -> bool {
        !matches!(self.homogeneity(f), Some(Homogeneity::Inhomogeneous))
    }

    /// All monomials of the given weighted degree (weights are positive, so finite).
    pub fn monomials_of_degree(&self, degree: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if degree < 0 {
            return out;
        }
        let weights = self.weights();
        let nvars = self.nvars();
        let mut exps = vec![0u32; nvars];
        fn rec(weights: &[i64], exps: &mut Vec<u32>, var: usize, remaining: i64, out: &mut Vec<Monomial>) {
            if var == weights.len() {
                if remaining == 0 {
                    out.push(Monomial::new(exps.clone()));
                }
                return;
            }
            let w = weights[var];
            let max = remaining / w;
            for e in 0..=max {
                exps[var] = e as u32;
                rec(weights, exps, var + 1, remaining - e * w, out);
            }
            exps[var] = 0;
        }
        rec(weights, &mut exps, 0, degree, &mut out);
        // descending ring order for determinism
        out.sort_by(|a, b| self.mono_cmp(b, a));
        out
    }

    pub fn display_mono(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.data.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.data.vars[i], e)),
            }
        }
        parts.join("*")
    }

    pub fn display(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let field = self.field();
        let mut s = String::new();
        for (idx, (m, c)) in f.terms.iter().enumerate() {
            let (neg, mag) = match c {
                FieldElem::Rat(r) => {
                    use num_traits::Signed;
                    if r.is_negative() {
                        (true, field.display(&field.neg(c)))
                    } else {
                        (false, field.display(c))
                    }
                }
                FieldElem::Fp(_) => (false, field.display(c)),
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            if m.is_one() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&self.display_mono(m));
            } else {
                s.push_str(&format!("{}*{}", mag, self.display_mono(m)));
            }
        }
        s
    }

    /// Parse plain-text polynomial syntax: `x^2*y + 3*y^3 - 1/2*x`.
    pub fn parse(&self, input: &str) -> Result<Polynomial> {
        parse_poly(self, input)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .data
            .vars
            .iter()
            .zip(&self.data.weights)
            .map(|(v, w)| format!("{v}:{w}"))
            .collect();
        write!(f, "{}[{}]", self.data.field, vars.join(", "))
    }
}

// --- parser -----------------------------------------------------------------

#[derive(Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn lex_poly(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '0'..='9' => {
                let mut n: i64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as i64))
                            .ok_or_else(|| AlgebraError::Parse("integer literal overflow".into()))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(name));
            }
            other => {
                return Err(AlgebraError::Parse(format!("unexpected character `{other}` in polynomial")));
            }
        }
    }
    Ok(toks)
}

fn parse_poly(ring: &PolyRing, input: &str) -> Result<Polynomial> {
    let toks = lex_poly(input)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse("empty polynomial".into()));
    }
    let field = ring.field();
    let mut terms: Vec<(Monomial, FieldElem)> = Vec::new();
    let mut i = 0usize;
    loop {
        // sign
        let mut negative = false;
        while i < toks.len() {
            match toks[i] {
                Tok::Plus => i += 1,
                Tok::Minus => {
                    negative = !negative;
                    i += 1;
                }
                _ => break,
            }
        }
        if i >= toks.len() {
            return Err(AlgebraError::Parse("trailing operator in polynomial".into()));
        }
        // product of factors
        let mut coeff = field.one();
        let mut mono = Monomial::one(ring.nvars());
        loop {
            match &toks[i] {
                Tok::Int(n) => {
                    let mut c = field.from_i64(*n);
                    i += 1;
                    if i < toks.len() && toks[i] == Tok::Slash {
                        i += 1;
                        match toks.get(i) {
                            Some(Tok::Int(d)) => {
                                let den = field.from_i64(*d);
                                c = field.div(&c, &den)?;
                                i += 1;
                            }
                            _ => return Err(AlgebraError::Parse("expected denominator after `/`".into())),
                        }
                    }
                    coeff = field.mul(&coeff, &c);
                }
                Tok::Ident(name) => {
                    let vi = ring
                        .var_index(name)
                        .ok_or_else(|| AlgebraError::UnknownVariable(name.clone()))?;
                    i += 1;
                    let mut exp: u32 = 1;
                    if i < toks.len() && toks[i] == Tok::Caret {
                        i += 1;
                        match toks.get(i) {
                            Some(Tok::Int(e)) if *e >= 0 => {
                                exp = *e as u32;
                                i += 1;
                            }
                            _ => return Err(AlgebraError::Parse("expected exponent after `^`".into())),
                        }
                    }
                    let mut exps = vec![0u32; ring.nvars()];
                    exps[vi] = exp;
                    mono = mono.mul(&Monomial::new(exps));
                }
                _ => return Err(AlgebraError::Parse("expected coefficient or variable".into())),
            }
            if i < toks.len() && toks[i] == Tok::Star {
                i += 1;
                continue;
            }
            break;
        }
        if negative {
            coeff = field.neg(&coeff);
        }
        terms.push((mono, coeff));
        if i >= toks.len() {
            break;
        }
        match toks[i] {
            Tok::Plus | Tok::Minus => continue,
            _ => return Err(AlgebraError::Parse("expected `+` or `-` between terms".into())),
        }
    }
    Ok(ring.from_terms(terms))
}
