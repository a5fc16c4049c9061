//! Line-based definition files for Hopf algebras, Lie algebras and plain algebras.
//!
//! ```text
//! # comment
//! name sweedler4
//! field rational            # or: field prime 7 | field cyclotomic 3
//! kind hopf                 # or: lie | algebra
//! basis 1 g x gx
//! unit 1
//! product x g = -gx
//! coproduct x = x|1 + g|x
//! counit g = 1
//! antipode x = -gx
//! bracket e f = h           # lie only
//! ```
//!
//! Coefficients are exact: integers, `p/q`, or `[c0,c1,...]` coefficient arrays on powers of
//! the root of unity (cyclotomic fields only), joined to labels with `*`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use dashu_int::IBig;
use dashu_ratio::RBig;
use thiserror::Error;

use crate::classical::{ClassicalError, LieAlgebra};
use crate::envelope::{AssocAlgebra, EnvelopeError};
use crate::exactla::{Field, Scalar, SparseVec};
use crate::hopf::{HopfAlgebra, HopfError, HopfParts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefinitionError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: floating-point literal `{literal}` is not exact")]
    NonExact { line: usize, column: usize, literal: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Lie(#[from] ClassicalError),
    #[error(transparent)]
    Algebra(#[from] EnvelopeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Hopf,
    Lie,
    Algebra,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Hopf => "hopf",
            Kind::Lie => "lie",
            Kind::Algebra => "algebra",
        })
    }
}

/// A parsed definition file; blocks absent from the file are empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: Option<String>,
    pub field: Field,
    pub kind: Kind,
    pub labels: Vec<String>,
    pub unit: Option<SparseVec>,
    pub products: BTreeMap<(usize, usize), SparseVec>,
    pub coproducts: BTreeMap<usize, Vec<(usize, usize, Scalar)>>,
    pub counits: BTreeMap<usize, Scalar>,
    pub antipodes: BTreeMap<usize, SparseVec>,
    pub brackets: BTreeMap<(usize, usize), SparseVec>,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, DefinitionError> {
        Err(DefinitionError::Syntax { line: self.line, column: self.offset + self.pos + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// A maximal run of label/number characters.
    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '/' || c == '.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }
}

fn is_label(s: &str) -> bool {
    s == "1"
        || (s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
}

fn parse_rational(cur: &Cursor, lit: &str, column: usize) -> Result<RBig, DefinitionError> {
    let float_like = lit.contains('.')
        || (lit.chars().next().is_some_and(|c| c.is_ascii_digit()) && lit.contains(['e', 'E']));
    if float_like {
        return Err(DefinitionError::NonExact { line: cur.line, column, literal: lit.to_string() });
    }
    let bad = || DefinitionError::Syntax { line: cur.line, column, message: format!("invalid number `{lit}`") };
    let parse_int = |s: &str| -> Result<IBig, DefinitionError> {
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<IBig>().map_err(|_| bad())
    };
    match lit.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (parse_int(p)?, parse_int(q)?);
            if q == IBig::ZERO {
                return Err(DefinitionError::Syntax { line: cur.line, column, message: "zero denominator".into() });
            }
            Ok(RBig::from_parts_signed(p, q))
        }
        None => Ok(RBig::from(parse_int(lit)?)),
    }
}

struct Parser<'a> {
    field: &'a Field,
    labels: &'a [String],
}

enum Coef {
    Number(RBig),
    Array(Vec<RBig>),
}

impl Parser<'_> {
    fn scalar(&self, cur: &Cursor, c: Coef, column: usize) -> Result<Scalar, DefinitionError> {
        let res = match c {
            Coef::Number(q) => self.field.from_rational(q),
            Coef::Array(v) => {
                if !matches!(self.field, Field::Cyclotomic(_)) {
                    return Err(DefinitionError::Syntax {
                        line: cur.line,
                        column,
                        message: "coefficient arrays need a cyclotomic field".into(),
                    });
                }
                self.field.from_coefficients(v)
            }
        };
        res.map_err(|e| DefinitionError::Syntax { line: cur.line, column, message: e.to_string() })
    }

    fn label(&self, cur: &mut Cursor) -> Result<usize, DefinitionError> {
        cur.skip_ws();
        let column = cur.offset + cur.pos + 1;
        let w = cur.word();
        if w.is_empty() {
            return cur.err("expected a basis label");
        }
        self.labels.iter().position(|l| l == w).ok_or_else(|| DefinitionError::Syntax {
            line: cur.line,
            column,
            message: format!("unknown basis label `{w}`"),
        })
    }

    /// Optional coefficient: number or array followed by `*`, or a bare number in scalar mode.
    fn coefficient(&self, cur: &mut Cursor, scalar_only: bool) -> Result<Option<(Coef, usize)>, DefinitionError> {
        cur.skip_ws();
        let column = cur.offset + cur.pos + 1;
        if cur.eat('[') {
            let mut v = Vec::new();
            loop {
                let neg = cur.eat('-');
                cur.skip_ws();
                let col = cur.offset + cur.pos + 1;
                let w = cur.word();
                let q = parse_rational(cur, w, col)?;
                v.push(if neg { -q } else { q });
                if cur.eat(']') {
                    break;
                }
                if !cur.eat(',') {
                    return cur.err("expected `,` or `]`");
                }
            }
            if !scalar_only && !cur.eat('*') {
                return cur.err("expected `*` after coefficient");
            }
            return Ok(Some((Coef::Array(v), column)));
        }
        let save = cur.pos;
        let w = cur.word();
        let numeric = w.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '.');
        if !numeric {
            cur.pos = save;
            return Ok(None);
        }
        if scalar_only {
            return Ok(Some((Coef::Number(parse_rational(cur, w, column)?), column)));
        }
        if cur.eat('*') {
            return Ok(Some((Coef::Number(parse_rational(cur, w, column)?), column)));
        }
        if w.contains(['.', 'e', 'E']) && !is_label(w) {
            parse_rational(cur, w, column)?;
        }
        // a bare `1` is the unit label; anything else numeric must carry `*`
        cur.pos = save;
        Ok(None)
    }

    /// `term (+|- term)*` where each term is `[coef*] label(|label)^arity-1`, or `0`.
    fn lincomb(&self, cur: &mut Cursor, arity: usize) -> Result<Vec<(Vec<usize>, Scalar)>, DefinitionError> {
        let mut terms = Vec::new();
        let save = cur.pos;
        if cur.word() == "0" && cur.at_end() {
            return Ok(terms);
        }
        cur.pos = save;
        let mut first = true;
        loop {
            let mut neg = false;
            if cur.eat('-') {
                neg = true;
            } else if !first && !cur.eat('+') {
                return cur.err("expected `+` or `-`");
            }
            first = false;
            let coef = match self.coefficient(cur, false)? {
                Some((c, col)) => self.scalar(cur, c, col)?,
                None => Scalar::one(),
            };
            let mut idx = vec![self.label(cur)?];
            while idx.len() < arity {
                if !cur.eat('|') {
                    return cur.err(format!("expected `|`: terms here have {arity} tensor factors"));
                }
                idx.push(self.label(cur)?);
            }
            if cur.peek() == Some('|') {
                return cur.err(format!("too many tensor factors, expected {arity}"));
            }
            terms.push((idx, if neg { -coef } else { coef }));
            if cur.at_end() {
                return Ok(terms);
            }
        }
    }

    fn value(&self, cur: &mut Cursor) -> Result<Scalar, DefinitionError> {
        let neg = cur.eat('-');
        match self.coefficient(cur, true)? {
            Some((c, col)) => {
                let s = self.scalar(cur, c, col)?;
                if !cur.at_end() {
                    return cur.err("unexpected trailing input");
                }
                Ok(if neg { -s } else { s })
            }
            None => cur.err("expected a scalar"),
        }
    }
}

fn vec_of(terms: Vec<(Vec<usize>, Scalar)>) -> SparseVec {
    SparseVec::from_terms(terms.into_iter().map(|(i, c)| (i[0], c)))
}

impl Definition {
    pub fn parse(text: &str) -> Result<Self, DefinitionError> {
        let mut name = None;
        let mut field: Option<Field> = None;
        let mut kind: Option<Kind> = None;
        let mut labels: Option<Vec<String>> = None;
        let mut def = Definition {
            name: None,
            field: Field::Rational,
            kind: Kind::Hopf,
            labels: Vec::new(),
            unit: None,
            products: BTreeMap::new(),
            coproducts: BTreeMap::new(),
            counits: BTreeMap::new(),
            antipodes: BTreeMap::new(),
            brackets: BTreeMap::new(),
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut cur = Cursor { text: content, pos: 0, line: line_no, offset: 0 };
            if cur.at_end() {
                continue;
            }
            let keyword = cur.word();
            let dup = |cur: &Cursor, what: &str| cur.err::<()>(format!("duplicate {what}"));
            match keyword {
                "name" => {
                    let w = cur.word().to_string();
                    if w.is_empty() || !cur.at_end() {
                        return cur.err("expected a single name");
                    }
                    name = Some(w);
                }
                "field" => {
                    if field.is_some() {
                        dup(&cur, "field declaration")?;
                    }
                    let f = match cur.word() {
                        "rational" => Field::Rational,
                        "prime" | "cyclotomic" => {
                            let which = &content[..cur.pos];
                            let n: u64 = match cur.word().parse() {
                                Ok(n) => n,
                                Err(_) => return cur.err("expected a positive integer"),
                            };
                            let res = if which.trim_end().ends_with("prime") {
                                Field::prime(n)
                            } else {
                                u32::try_from(n)
                                    .map_err(|_| crate::exactla::ExactError::InvalidField("order too large".into()))
                                    .and_then(Field::cyclotomic)
                            };
                            match res {
                                Ok(f) => f,
                                Err(e) => return cur.err(e.to_string()),
                            }
                        }
                        other => return cur.err(format!("unknown field `{other}`")),
                    };
                    if !cur.at_end() {
                        return cur.err("unexpected trailing input");
                    }
                    field = Some(f);
                }
                "kind" => {
                    if kind.is_some() {
                        dup(&cur, "kind declaration")?;
                    }
                    kind = Some(match cur.word() {
                        "hopf" => Kind::Hopf,
                        "lie" => Kind::Lie,
                        "algebra" => Kind::Algebra,
                        other => return cur.err(format!("unknown kind `{other}`")),
                    });
                    if !cur.at_end() {
                        return cur.err("unexpected trailing input");
                    }
                }
                "basis" => {
                    if labels.is_some() {
                        dup(&cur, "basis declaration")?;
                    }
                    let mut ls = Vec::new();
                    while !cur.at_end() {
                        cur.skip_ws();
                        let col = cur.pos + 1;
                        let w = cur.word();
                        if !is_label(w) {
                            if w.contains('.') {
                                return Err(DefinitionError::NonExact { line: line_no, column: col, literal: w.into() });
                            }
                            return Err(DefinitionError::Syntax {
                                line: line_no,
                                column: col,
                                message: format!("invalid basis label `{w}`"),
                            });
                        }
                        if ls.iter().any(|l| l == w) {
                            return Err(DefinitionError::Syntax {
                                line: line_no,
                                column: col,
                                message: format!("repeated basis label `{w}`"),
                            });
                        }
                        ls.push(w.to_string());
                    }
                    if ls.is_empty() {
                        return cur.err("empty basis");
                    }
                    labels = Some(ls);
                }
                "unit" | "product" | "coproduct" | "counit" | "antipode" | "bracket" => {
                    let Some(ls) = labels.as_ref() else {
                        return Err(DefinitionError::Syntax {
                            line: line_no,
                            column: 1,
                            message: format!("`{keyword}` before `basis`"),
                        });
                    };
                    let fld = field.clone().unwrap_or(Field::Rational);
                    let p = Parser { field: &fld, labels: ls };
                    match keyword {
                        "unit" => {
                            if def.unit.is_some() {
                                dup(&cur, "unit")?;
                            }
                            def.unit = Some(vec_of(p.lincomb(&mut cur, 1)?));
                        }
                        "product" | "bracket" => {
                            let a = p.label(&mut cur)?;
                            let b = p.label(&mut cur)?;
                            if !cur.eat('=') {
                                return cur.err("expected `=`");
                            }
                            let v = vec_of(p.lincomb(&mut cur, 1)?);
                            let map = if keyword == "product" { &mut def.products } else { &mut def.brackets };
                            if map.insert((a, b), v).is_some() {
                                dup(&cur, keyword)?;
                            }
                        }
                        _ => {
                            let a = p.label(&mut cur)?;
                            if !cur.eat('=') {
                                return cur.err("expected `=`");
                            }
                            let fresh = match keyword {
                                "coproduct" => {
                                    let t = p.lincomb(&mut cur, 2)?;
                                    def.coproducts
                                        .insert(a, t.into_iter().map(|(i, c)| (i[0], i[1], c)).collect())
                                        .is_none()
                                }
                                "counit" => def.counits.insert(a, p.value(&mut cur)?).is_none(),
                                _ => def.antipodes.insert(a, vec_of(p.lincomb(&mut cur, 1)?)).is_none(),
                            };
                            if !fresh {
                                dup(&cur, keyword)?;
                            }
                        }
                    }
                }
                other => return cur.err(format!("unknown directive `{other}`")),
            }
        }
        def.name = name;
        def.field = field.ok_or_else(|| DefinitionError::Shape("missing `field` line".into()))?;
        def.kind = kind.ok_or_else(|| DefinitionError::Shape("missing `kind` line".into()))?;
        def.labels = labels.ok_or_else(|| DefinitionError::Shape("missing `basis` line".into()))?;
        // explicit zero entries carry no information
        def.products.retain(|_, v| !v.is_zero());
        def.brackets.retain(|_, v| !v.is_zero());
        def.check_shape()?;
        Ok(def)
    }

    fn check_shape(&self) -> Result<(), DefinitionError> {
        let shape = |m: &str| Err(DefinitionError::Shape(m.to_string()));
        let n = self.labels.len();
        match self.kind {
            Kind::Hopf => {
                if self.unit.is_none() {
                    return shape("hopf definitions need a `unit` line");
                }
                if self.coproducts.len() != n || self.counits.len() != n || self.antipodes.len() != n {
                    return shape("hopf definitions need coproduct, counit and antipode for every basis element");
                }
                if !self.brackets.is_empty() {
                    return shape("`bracket` lines belong to lie definitions");
                }
            }
            Kind::Algebra => {
                if self.unit.is_none() {
                    return shape("algebra definitions need a `unit` line");
                }
                if !self.coproducts.is_empty() || !self.counits.is_empty() || !self.antipodes.is_empty() {
                    return shape("coalgebra data belongs to hopf definitions");
                }
                if !self.brackets.is_empty() {
                    return shape("`bracket` lines belong to lie definitions");
                }
            }
            Kind::Lie => {
                if self.unit.is_some()
                    || !self.products.is_empty()
                    || !self.coproducts.is_empty()
                    || !self.counits.is_empty()
                    || !self.antipodes.is_empty()
                {
                    return shape("lie definitions only take `bracket` lines");
                }
            }
        }
        Ok(())
    }

    /// Full product table with missing entries read as zero.
    pub fn product_table(&self) -> Vec<Vec<SparseVec>> {
        let n = self.labels.len();
        (0..n).map(|i| (0..n).map(|j| self.products.get(&(i, j)).cloned().unwrap_or_default()).collect()).collect()
    }

    pub fn to_hopf(&self) -> Result<HopfAlgebra, DefinitionError> {
        Ok(HopfAlgebra::new(self.to_hopf_parts()?)?)
    }

    /// Structure constants of a hopf definition, before any axiom is checked.
    pub fn to_hopf_parts(&self) -> Result<HopfParts, DefinitionError> {
        if self.kind != Kind::Hopf {
            return Err(DefinitionError::Shape(format!("expected a hopf definition, found {}", self.kind)));
        }
        let n = self.labels.len();
        Ok(HopfParts {
            name: self.name.clone().unwrap_or_else(|| "custom".into()),
            field: self.field.clone(),
            labels: self.labels.clone(),
            product: self.product_table(),
            unit: self.unit.clone().unwrap_or_default(),
            coproduct: (0..n).map(|i| self.coproducts[&i].clone()).collect(),
            counit: (0..n).map(|i| self.counits[&i].clone()).collect(),
            antipode: (0..n).map(|i| self.antipodes[&i].clone()).collect(),
        })
    }

    /// A Lie algebra over the rationals; `bracket a b` lines imply `[b, a] = -[a, b]`.
    pub fn to_lie(&self) -> Result<LieAlgebra, DefinitionError> {
        self.expect_rational(Kind::Lie)?;
        let n = self.labels.len();
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for ((a, b), v) in &self.brackets {
            table[*a][*b] = v.clone();
            if !self.brackets.contains_key(&(*b, *a)) {
                table[*b][*a] = v.neg();
            }
        }
        let name = self.name.clone().unwrap_or_else(|| "custom".into());
        Ok(LieAlgebra::new(name, self.labels.clone(), table)?)
    }

    /// A unital associative algebra over the rationals.
    pub fn to_algebra(&self) -> Result<AssocAlgebra, DefinitionError> {
        self.expect_rational(Kind::Algebra)?;
        let unit = self.unit.clone().ok_or_else(|| DefinitionError::Shape("algebra definitions need a `unit` line".into()))?;
        let labels: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        let name = self.name.clone().unwrap_or_else(|| "custom".into());
        Ok(AssocAlgebra::new(&name, &labels, self.product_table(), unit)?)
    }

    fn expect_rational(&self, kind: Kind) -> Result<(), DefinitionError> {
        if self.kind != kind {
            return Err(DefinitionError::Shape(format!("expected a {kind} definition, found {}", self.kind)));
        }
        if self.field != Field::Rational {
            return Err(DefinitionError::Shape(format!("{kind} definitions are supported over the rationals only")));
        }
        Ok(())
    }

    pub fn from_hopf(h: &HopfAlgebra) -> Self {
        let p = h.parts();
        let n = h.dim();
        let mut products = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if !p.product[i][j].is_zero() {
                    products.insert((i, j), p.product[i][j].clone());
                }
            }
        }
        Definition {
            name: Some(p.name.clone()),
            field: p.field.clone(),
            kind: Kind::Hopf,
            labels: p.labels.clone(),
            unit: Some(p.unit.clone()),
            products,
            coproducts: (0..n).map(|i| (i, p.coproduct[i].clone())).collect(),
            counits: (0..n).map(|i| (i, p.counit[i].clone())).collect(),
            antipodes: (0..n).map(|i| (i, p.antipode[i].clone())).collect(),
            brackets: BTreeMap::new(),
        }
    }

    fn fmt_terms(&self, terms: &[(Vec<usize>, Scalar)]) -> String {
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (idx, c)) in terms.iter().enumerate() {
            let item = idx.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join("|");
            let (neg, mag) = match c.as_rational() {
                Some(q) if q < &RBig::ZERO => (true, Scalar::Rational(-q.clone())),
                _ => (false, c.clone()),
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mag.is_one() && mag.as_rational().is_some() {
                out.push_str(&item);
            } else {
                let _ = write!(out, "{}*{}", fmt_scalar(&mag), item);
            }
        }
        out
    }

    fn fmt_vec(&self, v: &SparseVec) -> String {
        let terms: Vec<(Vec<usize>, Scalar)> = v.iter().map(|(i, c)| (vec![*i], c.clone())).collect();
        self.fmt_terms(&terms)
    }

    /// Canonical text: fixed line order, zero products omitted, exact coefficients.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            let _ = writeln!(s, "name {n}");
        }
        let _ = writeln!(s, "field {}", self.field);
        let _ = writeln!(s, "kind {}", self.kind);
        let _ = writeln!(s, "basis {}", self.labels.join(" "));
        if let Some(u) = &self.unit {
            let _ = writeln!(s, "unit {}", self.fmt_vec(u));
        }
        for ((a, b), v) in &self.products {
            if !v.is_zero() {
                let _ = writeln!(s, "product {} {} = {}", self.labels[*a], self.labels[*b], self.fmt_vec(v));
            }
        }
        for (a, t) in &self.coproducts {
            let mut terms: Vec<(Vec<usize>, Scalar)> = Vec::new();
            let mut merged: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (x, y, c) in t {
                crate::hopf::lin_add(&mut merged, vec![*x, *y], c.clone());
            }
            terms.extend(merged);
            let _ = writeln!(s, "coproduct {} = {}", self.labels[*a], self.fmt_terms(&terms));
        }
        for (a, c) in &self.counits {
            let _ = writeln!(s, "counit {} = {}", self.labels[*a], fmt_scalar(c));
        }
        for (a, v) in &self.antipodes {
            let _ = writeln!(s, "antipode {} = {}", self.labels[*a], self.fmt_vec(v));
        }
        for ((a, b), v) in &self.brackets {
            let _ = writeln!(s, "bracket {} {} = {}", self.labels[*a], self.labels[*b], self.fmt_vec(v));
        }
        s
    }
}

fn fmt_scalar(c: &Scalar) -> String {
    match c {
        Scalar::Cyclotomic { coeffs, .. } => {
            format!("[{}]", coeffs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","))
        }
        _ => c.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::catalog;
    use proptest::prelude::*;

    const Z2: &str = "field rational\nkind hopf\nbasis 1 g\nunit 1\nproduct 1 1 = 1\nproduct 1 g = g\n\
        product g 1 = g\nproduct g g = 1\ncoproduct 1 = 1|1\ncoproduct g = g|g\ncounit 1 = 1\n\
        counit g = 1\nantipode 1 = 1\nantipode g = g\n";

    #[test]
    fn parses_group_algebra() {
        let d = Definition::parse(Z2).unwrap();
        assert_eq!(d.labels.len(), 2);
        assert_eq!(d.to_hopf().unwrap().dim(), 2);
    }

    #[test]
    fn rejects_floats_with_location() {
        let text = Z2.replace("counit g = 1", "counit g = 0.5");
        match Definition::parse(&text) {
            Err(DefinitionError::NonExact { line, column, literal }) => {
                assert_eq!((line, literal.as_str()), (12, "0.5"));
                assert_eq!(column, 12);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
        let text = Z2.replace("antipode g = g", "antipode g = 1.5*g");
        assert!(matches!(Definition::parse(&text), Err(DefinitionError::NonExact { .. })));
    }

    #[test]
    fn syntax_errors_are_located() {
        let text = Z2.replace("coproduct g = g|g", "coproduct g = g|q");
        match Definition::parse(&text) {
            Err(DefinitionError::Syntax { line, column, .. }) => assert_eq!((line, column), (10, 17)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Definition::parse(&Z2.replace("antipode g = g\n", "")),
            Err(DefinitionError::Shape(_))
        ));
    }

    #[test]
    fn catalog_round_trips() {
        for name in crate::hopf::CATALOG_NAMES {
            let h = catalog(name).unwrap();
            let d = Definition::from_hopf(&h);
            let text = d.serialize();
            let back = Definition::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
            assert_eq!(back, d, "{name}");
            assert_eq!(back.to_hopf().unwrap(), h);
        }
    }

    #[test]
    fn lie_and_algebra_definitions() {
        let sl2 = "name sl2\nfield rational\nkind lie\nbasis e h f\nbracket h e = 2*e\nbracket h f = -2*f\nbracket e f = h\n";
        let lie = Definition::parse(sl2).unwrap().to_lie().unwrap();
        assert_eq!(lie, crate::classical::lie_catalog("sl2").unwrap());
        let bad = sl2.replace("bracket e f = h", "bracket e f = e");
        assert!(matches!(Definition::parse(&bad).unwrap().to_lie(), Err(DefinitionError::Lie(_))));
        let qz2 = "field rational\nkind algebra\nbasis 1 s\nunit 1\nproduct 1 1 = 1\nproduct 1 s = s\nproduct s 1 = s\nproduct s s = 1\n";
        assert_eq!(Definition::parse(qz2).unwrap().to_algebra().unwrap().dim(), 2);
        assert!(Definition::parse(Z2).unwrap().to_algebra().is_err());
    }

    proptest! {
        #[test]
        fn parse_serialize_parse(p in -20i64..20, q in 1i64..9, k in 0usize..3) {
            let coef = Scalar::ratio(p, q);
            let mut d = Definition::parse(Z2).unwrap();
            d.kind = Kind::Algebra;
            d.coproducts.clear();
            d.counits.clear();
            d.antipodes.clear();
            d.products.insert((k % 2, 1), SparseVec::from_terms([(0, coef.clone()), (1, Scalar::from(k as i64))]));
            d.products.retain(|_, v| !v.is_zero());
            let text = d.serialize();
            let once = Definition::parse(&text).unwrap();
            prop_assert_eq!(&once, &d);
            prop_assert_eq!(Definition::parse(&once.serialize()).unwrap(), once);
        }
    }
}
