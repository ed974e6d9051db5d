//! Line-oriented data formats: conformal-embedding tables, coset tables,
//! period-8 charge relations, and user fusion-ring files.
//!
//! Table lines are plain UTF-8 with `#` comments. Grammar sketch:
//!
//! ```text
//! embedding := ["?"] product "<=" product ["|" params]
//! coset     := ["?"] "Vir" ":" "m" "=" expr "=" "(" product ")" "/" "(" product ")" ["|" params]
//! relation  := ["?"] term ("*" term)* ["|" params]
//! product   := factor ("x" factor)*
//! factor    := "u1" ":" expr | ("su"|"so"|"sp") "(" expr ")" ":" expr
//!            | FAMILY "(" expr ")" ":" expr | FAMILYRANK ":" expr
//! term      := factor ["^" int] | "sl2plus" ":" expr ["^" int]
//!            | "Vir" ":" "m" "=" expr ["^" int]
//! params    := name "=" int ".." int ("," name "=" int ".." int)*
//! ```
//!
//! Integer expressions allow `+ - * /` and parentheses over named
//! parameters, except that in relation lines a top-level `*` separates
//! terms instead of multiplying. The name `x` is reserved as the product
//! separator.

use std::collections::BTreeMap;

use wittforge_core::affine::expr::IntExpr;
use wittforge_core::affine::verify::{
    ChargeTerm, CosetEntry, EmbeddingEntry, ParamRange, Product, RelationEntry,
};
use wittforge_core::affine::{AlgebraSymbol, DynkinFamily, FactorSpec, Resolution};

use crate::CliError;

/// Canonical names of the shipped data files.
pub const EMBEDDINGS_NAME: &str = "conformal_embeddings.txt";
pub const COSETS_NAME: &str = "cosets.txt";
pub const RELATIONS_NAME: &str = "sl2_relations.txt";

/// Shipped table contents, embedded so the binary verifies out of the box.
pub const EMBEDDINGS_TEXT: &str = include_str!("../data/conformal_embeddings.txt");
pub const COSETS_TEXT: &str = include_str!("../data/cosets.txt");
pub const RELATIONS_TEXT: &str = include_str!("../data/sl2_relations.txt");

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Colon,
    Equals,
    LessEq,
    Pipe,
    Comma,
    DotDot,
    Slash,
    Star,
    Plus,
    Minus,
    Caret,
    Question,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("name {s:?}"),
            Tok::Int(v) => format!("integer {v}"),
            Tok::LParen => String::from("\"(\""),
            Tok::RParen => String::from("\")\""),
            Tok::Colon => String::from("\":\""),
            Tok::Equals => String::from("\"=\""),
            Tok::LessEq => String::from("\"<=\""),
            Tok::Pipe => String::from("\"|\""),
            Tok::Comma => String::from("\",\""),
            Tok::DotDot => String::from("\"..\""),
            Tok::Slash => String::from("\"/\""),
            Tok::Star => String::from("\"*\""),
            Tok::Plus => String::from("\"+\""),
            Tok::Minus => String::from("\"-\""),
            Tok::Caret => String::from("\"^\""),
            Tok::Question => String::from("\"?\""),
        }
    }
}

fn lex(line: &str, loc: &str) -> Result<Vec<Tok>, CliError> {
    let chars: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '#' => break,
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            ':' => {
                toks.push(Tok::Colon);
                i += 1;
            }
            '=' => {
                toks.push(Tok::Equals);
                i += 1;
            }
            '|' => {
                toks.push(Tok::Pipe);
                i += 1;
            }
            ',' => {
                toks.push(Tok::Comma);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '?' => {
                toks.push(Tok::Question);
                i += 1;
            }
            '<' => {
                if chars.get(i + 1) == Some(&'=') {
                    toks.push(Tok::LessEq);
                    i += 2;
                } else {
                    return Err(CliError::Usage(format!(
                        "{loc}: \"<\" must be part of \"<=\""
                    )));
                }
            }
            '.' => {
                if chars.get(i + 1) == Some(&'.') {
                    toks.push(Tok::DotDot);
                    i += 2;
                } else {
                    return Err(CliError::Usage(format!(
                        "{loc}: \".\" must be part of \"..\""
                    )));
                }
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value: i64 = text.parse().map_err(|_| {
                    CliError::Usage(format!("{loc}: integer {text} is too large"))
                })?;
                toks.push(Tok::Int(value));
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "{loc}: unexpected character {c:?}"
                )));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    loc: String,
    /// In relation lines a top-level `*` separates terms, so expression
    /// parsing must not consume it.
    term_star: bool,
}

impl Parser {
    fn new(toks: Vec<Tok>, loc: String, term_star: bool) -> Parser {
        Parser { toks, pos: 0, loc, term_star }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: &str) -> CliError {
        CliError::Usage(format!("{}: {msg}", self.loc))
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), CliError> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(self.err(&format!("expected {what}, got {}", t.describe()))),
            None => Err(self.err(&format!("expected {what} before end of line"))),
        }
    }

    fn expect_end(&self) -> Result<(), CliError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(&format!("unexpected trailing {}", t.describe()))),
        }
    }

    fn parse_expr(&mut self) -> Result<IntExpr, CliError> {
        let mut e = self.parse_term_expr()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    e = e + self.parse_term_expr()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    e = e - self.parse_term_expr()?;
                }
                _ => return Ok(e),
            }
        }
    }

    fn parse_term_expr(&mut self) -> Result<IntExpr, CliError> {
        let mut e = self.parse_atom()?;
        loop {
            match self.peek() {
                Some(Tok::Star) if !self.term_star => {
                    self.bump();
                    e = e * self.parse_atom()?;
                }
                Some(Tok::Slash) if !self.term_star => {
                    self.bump();
                    e = e / self.parse_atom()?;
                }
                _ => return Ok(e),
            }
        }
    }

    fn parse_atom(&mut self) -> Result<IntExpr, CliError> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(IntExpr::constant(v)),
            Some(Tok::Minus) => Ok(IntExpr::constant(0) - self.parse_atom()?),
            Some(Tok::Ident(name)) => {
                if name == "x" {
                    Err(self.err("the name \"x\" is reserved as the product separator"))
                } else {
                    Ok(IntExpr::var(&name))
                }
            }
            Some(Tok::LParen) => {
                // Inside parentheses `*` is always multiplication, even in
                // relation lines where it separates terms at top level.
                let saved = self.term_star;
                self.term_star = false;
                let e = self.parse_expr()?;
                self.term_star = saved;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(e)
            }
            Some(t) => Err(self.err(&format!(
                "expected an integer, parameter, or \"(\", got {}",
                t.describe()
            ))),
            None => Err(self.err("expected an expression before end of line")),
        }
    }

    fn parse_signed_int(&mut self) -> Result<i64, CliError> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(v),
            Some(Tok::Minus) => match self.bump() {
                Some(Tok::Int(v)) => Ok(-v),
                _ => Err(self.err("expected an integer after \"-\"")),
            },
            Some(t) => Err(self.err(&format!("expected an integer, got {}", t.describe()))),
            None => Err(self.err("expected an integer before end of line")),
        }
    }

    fn parse_factor(&mut self) -> Result<FactorSpec, CliError> {
        let name = match self.bump() {
            Some(Tok::Ident(s)) => s,
            Some(t) => {
                return Err(self.err(&format!(
                    "expected an algebra symbol, got {}",
                    t.describe()
                )));
            }
            None => return Err(self.err("expected an algebra symbol before end of line")),
        };
        let symbol = if name == "u1" {
            AlgebraSymbol::U1
        } else if name == "su" || name == "so" || name == "sp" {
            self.expect(Tok::LParen, &format!("\"(\" after {name}"))?;
            let arg = self.parse_expr()?;
            self.expect(Tok::RParen, "\")\" after the argument")?;
            match name.as_str() {
                "su" => AlgebraSymbol::Su(arg),
                "so" => AlgebraSymbol::So(arg),
                _ => AlgebraSymbol::Sp(arg),
            }
        } else {
            let mut cs = name.chars();
            let head = cs.next().expect("idents are non-empty");
            let tail: String = cs.collect();
            let family = dynkin_family(head)
                .ok_or_else(|| self.err(&format!("unknown algebra symbol {name:?}")))?;
            let rank = if tail.is_empty() {
                self.expect(Tok::LParen, "\"(\" before the rank")?;
                let r = self.parse_expr()?;
                self.expect(Tok::RParen, "\")\" after the rank")?;
                r
            } else if tail.chars().all(|c| c.is_ascii_digit()) {
                IntExpr::constant(
                    tail.parse()
                        .map_err(|_| self.err(&format!("rank in {name:?} is too large")))?,
                )
            } else {
                return Err(self.err(&format!("unknown algebra symbol {name:?}")));
            };
            AlgebraSymbol::Dynkin { family, rank }
        };
        self.expect(Tok::Colon, "\":\" before the level")?;
        let level = self.parse_expr()?;
        Ok(FactorSpec { symbol, level })
    }

    fn parse_product(&mut self) -> Result<Product, CliError> {
        let mut factors = vec![self.parse_factor()?];
        while matches!(self.peek(), Some(Tok::Ident(s)) if s == "x") {
            self.bump();
            factors.push(self.parse_factor()?);
        }
        Ok(factors)
    }

    fn parse_params(&mut self) -> Result<Vec<ParamRange>, CliError> {
        let mut params: Vec<ParamRange> = Vec::new();
        loop {
            let name = match self.bump() {
                Some(Tok::Ident(s)) if s != "x" => s,
                Some(t) => {
                    return Err(self.err(&format!(
                        "expected a parameter name, got {}",
                        t.describe()
                    )));
                }
                None => return Err(self.err("expected a parameter name before end of line")),
            };
            if params.iter().any(|p| p.name == name) {
                return Err(self.err(&format!("parameter {name:?} given twice")));
            }
            self.expect(Tok::Equals, "\"=\" after the parameter name")?;
            let lo = self.parse_signed_int()?;
            self.expect(Tok::DotDot, "\"..\" in the parameter range")?;
            let hi = self.parse_signed_int()?;
            if lo > hi {
                return Err(self.err(&format!("empty range {lo}..{hi}")));
            }
            params.push(ParamRange { name, lo, hi });
            match self.peek() {
                Some(Tok::Comma) => {
                    self.bump();
                }
                _ => return Ok(params),
            }
        }
    }

    fn take_question(&mut self) -> bool {
        if matches!(self.peek(), Some(Tok::Question)) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn finish_params(&mut self) -> Result<Vec<ParamRange>, CliError> {
        let params = if matches!(self.peek(), Some(Tok::Pipe)) {
            self.bump();
            self.parse_params()?
        } else {
            Vec::new()
        };
        self.expect_end()?;
        Ok(params)
    }

    fn parse_embedding_line(&mut self, source_id: String) -> Result<EmbeddingEntry, CliError> {
        let conjectural = self.take_question();
        let sub = self.parse_product()?;
        self.expect(Tok::LessEq, "\"<=\" between sub and target")?;
        let target = self.parse_product()?;
        let params = self.finish_params()?;
        Ok(EmbeddingEntry { source_id, sub, target, params, conjectural })
    }

    fn expect_ident(&mut self, want: &str) -> Result<(), CliError> {
        match self.bump() {
            Some(Tok::Ident(s)) if s == want => Ok(()),
            Some(t) => Err(self.err(&format!("expected \"{want}\", got {}", t.describe()))),
            None => Err(self.err(&format!("expected \"{want}\" before end of line"))),
        }
    }

    fn parse_coset_line(&mut self, source_id: String) -> Result<CosetEntry, CliError> {
        let conjectural = self.take_question();
        self.expect_ident("Vir")?;
        self.expect(Tok::Colon, "\":\" after Vir")?;
        self.expect_ident("m")?;
        self.expect(Tok::Equals, "\"=\" after \"Vir:m\"")?;
        let vir_index = self.parse_expr()?;
        self.expect(Tok::Equals, "\"=\" before the coset")?;
        self.expect(Tok::LParen, "\"(\" before the numerator")?;
        let numerator = self.parse_product()?;
        self.expect(Tok::RParen, "\")\" after the numerator")?;
        self.expect(Tok::Slash, "\"/\" between numerator and denominator")?;
        self.expect(Tok::LParen, "\"(\" before the denominator")?;
        let denominator = self.parse_product()?;
        self.expect(Tok::RParen, "\")\" after the denominator")?;
        let params = self.finish_params()?;
        Ok(CosetEntry {
            source_id,
            vir_index,
            numerator,
            denominator,
            params,
            conjectural,
        })
    }

    fn parse_relation_term(&mut self) -> Result<(ChargeTerm, i64), CliError> {
        let term = match self.peek() {
            Some(Tok::Ident(s)) if s == "Vir" => {
                self.bump();
                self.expect(Tok::Colon, "\":\" after Vir")?;
                self.expect_ident("m")?;
                self.expect(Tok::Equals, "\"=\" after \"Vir:m\"")?;
                ChargeTerm::Virasoro(self.parse_expr()?)
            }
            Some(Tok::Ident(s)) if s == "sl2plus" => {
                self.bump();
                self.expect(Tok::Colon, "\":\" after sl2plus")?;
                ChargeTerm::PlusSector(self.parse_expr()?)
            }
            _ => ChargeTerm::Affine(self.parse_factor()?),
        };
        let exponent = if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            self.parse_signed_int()?
        } else {
            1
        };
        Ok((term, exponent))
    }

    fn parse_relation_terms(&mut self) -> Result<Vec<(ChargeTerm, i64)>, CliError> {
        let mut terms = vec![self.parse_relation_term()?];
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            terms.push(self.parse_relation_term()?);
        }
        Ok(terms)
    }

    fn parse_relation_line(&mut self, source_id: String) -> Result<RelationEntry, CliError> {
        let conjectural = self.take_question();
        let terms = self.parse_relation_terms()?;
        let params = self.finish_params()?;
        Ok(RelationEntry { source_id, terms, params, conjectural })
    }
}

fn dynkin_family(c: char) -> Option<DynkinFamily> {
    Some(match c {
        'A' => DynkinFamily::A,
        'B' => DynkinFamily::B,
        'C' => DynkinFamily::C,
        'D' => DynkinFamily::D,
        'E' => DynkinFamily::E,
        'F' => DynkinFamily::F,
        'G' => DynkinFamily::G,
        _ => return None,
    })
}

/// Yields `(1-based line number, content)` for non-empty, non-comment lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn entry_loc(name: &str, lineno: usize) -> String {
    format!("{name}:{lineno:04}")
}

/// Parses a whole embedding table.
pub fn parse_embeddings(name: &str, text: &str) -> Result<Vec<EmbeddingEntry>, CliError> {
    content_lines(text)
        .map(|(lineno, line)| {
            let loc = entry_loc(name, lineno);
            let toks = lex(line, &loc)?;
            let mut p = Parser::new(toks, loc.clone(), false);
            p.parse_embedding_line(format!("{loc}: {line}"))
        })
        .collect()
}

/// Parses a whole coset table.
pub fn parse_cosets(name: &str, text: &str) -> Result<Vec<CosetEntry>, CliError> {
    content_lines(text)
        .map(|(lineno, line)| {
            let loc = entry_loc(name, lineno);
            let toks = lex(line, &loc)?;
            let mut p = Parser::new(toks, loc.clone(), false);
            p.parse_coset_line(format!("{loc}: {line}"))
        })
        .collect()
}

/// Parses a whole relation table.
pub fn parse_relations(name: &str, text: &str) -> Result<Vec<RelationEntry>, CliError> {
    content_lines(text)
        .map(|(lineno, line)| {
            let loc = entry_loc(name, lineno);
            let toks = lex(line, &loc)?;
            let mut p = Parser::new(toks, loc.clone(), true);
            p.parse_relation_line(format!("{loc}: {line}"))
        })
        .collect()
}

/// Parses a single charge symbol such as `A1:28`, `su(6):1`, `u1:1`,
/// `Vir:m=2`, or `sl2plus:3` for the `affine charge` command.
pub fn parse_charge_symbol(input: &str) -> Result<ChargeTerm, CliError> {
    let loc = String::from("symbol");
    let toks = lex(input, &loc)?;
    let mut p = Parser::new(toks, loc, true);
    let (term, exponent) = p.parse_relation_term()?;
    if exponent != 1 {
        return Err(p.err("exponents are not allowed on a bare symbol"));
    }
    p.expect_end()?;
    Ok(term)
}

/// Parses an inline relation expression; returns its `?` marker and terms.
pub fn parse_inline_relation(input: &str) -> Result<(bool, Vec<(ChargeTerm, i64)>), CliError> {
    let loc = String::from("relation");
    let toks = lex(input, &loc)?;
    let mut p = Parser::new(toks, loc, true);
    let conjectural = p.take_question();
    let terms = p.parse_relation_terms()?;
    p.expect_end()?;
    Ok((conjectural, terms))
}

/// Canonical form of a constant, parameter-free relation: resolved factor
/// names with merged exponents, sorted. Two relations get the same key
/// exactly when they name the same multiset of charges.
pub fn relation_key(terms: &[(ChargeTerm, i64)]) -> Option<Vec<(String, i64)>> {
    let env = BTreeMap::new();
    let mut acc: BTreeMap<String, i64> = BTreeMap::new();
    for (term, e) in terms {
        match term {
            ChargeTerm::Affine(spec) => match spec.resolve(&env) {
                Ok(Resolution::Factors(algs)) => {
                    for a in algs {
                        *acc.entry(a.to_string()).or_insert(0) += e;
                    }
                }
                Ok(Resolution::CircleLine) => {
                    *acc.entry(String::from("u1")).or_insert(0) += e;
                }
                _ => return None,
            },
            ChargeTerm::PlusSector(k) => {
                let k = k.eval_const().ok()?;
                *acc.entry(format!("sl2plus:{k}")).or_insert(0) += e;
            }
            ChargeTerm::Virasoro(m) => {
                let m = m.eval_const().ok()?;
                *acc.entry(format!("Vir:m={m}")).or_insert(0) += e;
            }
            ChargeTerm::Metric(_) => return None,
        }
    }
    acc.retain(|_, v| *v != 0);
    Some(acc.into_iter().collect())
}

/// True when the given constant relation coincides with one of the shipped
/// entries marked conjectural, so its verdict should say so.
pub fn matches_shipped_conjectural(terms: &[(ChargeTerm, i64)]) -> bool {
    let Some(key) = relation_key(terms) else {
        return false;
    };
    let Ok(entries) = parse_relations(RELATIONS_NAME, RELATIONS_TEXT) else {
        return false;
    };
    entries
        .iter()
        .filter(|e| e.conjectural && e.params.is_empty())
        .filter_map(|e| relation_key(&e.terms))
        .any(|k| k == key)
}

/// Restricts every named parameter range to `lo..=hi`.
pub fn clamp_params(params: &mut [ParamRange], lo: i64, hi: i64) {
    for p in params.iter_mut() {
        p.lo = p.lo.max(lo);
        p.hi = p.hi.min(hi);
    }
}

fn unit_row(rank: usize, j: usize) -> Vec<u64> {
    let mut row = vec![0u64; rank];
    row[j] = 1;
    row
}

impl Parser {
    fn parse_labels_line(&mut self) -> Result<Vec<String>, CliError> {
        self.expect_ident("labels")?;
        self.expect(Tok::Colon, "\":\" after labels")?;
        let mut labels: Vec<String> = Vec::new();
        loop {
            match self.bump() {
                Some(Tok::Ident(s)) => labels.push(s),
                Some(Tok::Int(1)) => labels.push(String::from("1")),
                Some(t) => {
                    return Err(self.err(&format!(
                        "labels must be names (or \"1\" for the unit), got {}",
                        t.describe()
                    )));
                }
                None => break,
            }
        }
        if labels.is_empty() {
            return Err(self.err("at least one label (the unit) is required"));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(self.err("duplicate label"));
        }
        Ok(labels)
    }

    fn parse_label(&mut self, labels: &[String]) -> Result<usize, CliError> {
        let name = match self.bump() {
            Some(Tok::Ident(s)) => s,
            Some(Tok::Int(1)) => String::from("1"),
            Some(t) => {
                return Err(self.err(&format!("expected a label, got {}", t.describe())));
            }
            None => return Err(self.err("expected a label before end of line")),
        };
        labels
            .iter()
            .position(|l| *l == name)
            .ok_or_else(|| self.err(&format!("unknown label {name:?}")))
    }

    fn parse_sum_item(&mut self, labels: &[String]) -> Result<(u64, usize), CliError> {
        if let Some(Tok::Int(v)) = self.peek() {
            let v = *v;
            if matches!(self.peek2(), Some(Tok::Star)) {
                self.bump();
                self.bump();
                let k = self.parse_label(labels)?;
                return Ok((v as u64, k));
            }
            if v != 1 {
                return Err(self.err(&format!(
                    "coefficients attach with \"*\", as in {v}*label"
                )));
            }
        }
        let k = self.parse_label(labels)?;
        Ok((1, k))
    }

    fn parse_product_line(
        &mut self,
        labels: &[String],
    ) -> Result<(usize, usize, Vec<u64>), CliError> {
        let i = self.parse_label(labels)?;
        self.expect(Tok::Star, "\"*\" between the two factors")?;
        let j = self.parse_label(labels)?;
        self.expect(Tok::Equals, "\"=\" before the right-hand side")?;
        let mut row = vec![0u64; labels.len()];
        let lone_zero =
            matches!(self.peek(), Some(Tok::Int(0))) && self.peek2().is_none();
        if lone_zero {
            self.bump();
        } else {
            loop {
                let (coeff, k) = self.parse_sum_item(labels)?;
                row[k] += coeff;
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.bump();
                    }
                    _ => break,
                }
            }
        }
        self.expect_end()?;
        Ok((i, j, row))
    }
}

/// Parses a fusion-ring file: a `labels:` line (unit first) followed by
/// product lines `a * b = 2*c + d` (`0` for the empty sum). Omitted unit
/// products follow from the unit axiom; an omitted mirror `b * a` copies
/// `a * b`; anything else omitted defaults to the zero sum.
pub fn parse_ring_file(name: &str, text: &str) -> Result<(Vec<String>, Vec<u64>), CliError> {
    let mut labels: Option<Vec<String>> = None;
    let mut rows: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
    for (lineno, line) in content_lines(text) {
        let loc = entry_loc(name, lineno);
        let toks = lex(line, &loc)?;
        let mut p = Parser::new(toks, loc, false);
        match &labels {
            None => {
                let ls = p.parse_labels_line()?;
                crate::input::check_ring_rank(ls.len())?;
                labels = Some(ls);
            }
            Some(ls) => {
                let (i, j, row) = p.parse_product_line(ls)?;
                if rows.insert((i, j), row).is_some() {
                    return Err(p.err("product given twice"));
                }
            }
        }
    }
    let labels = labels
        .ok_or_else(|| CliError::Usage(format!("{name}: missing \"labels:\" line")))?;
    let rank = labels.len();
    let specified: Vec<(usize, usize)> = rows.keys().copied().collect();
    for (i, j) in specified {
        if i != j && !rows.contains_key(&(j, i)) {
            let row = rows[&(i, j)].clone();
            rows.insert((j, i), row);
        }
    }
    for j in 0..rank {
        rows.entry((0, j)).or_insert_with(|| unit_row(rank, j));
        rows.entry((j, 0)).or_insert_with(|| unit_row(rank, j));
    }
    let mut table = vec![0u64; rank * rank * rank];
    for ((i, j), row) in rows {
        for (k, &v) in row.iter().enumerate() {
            table[(i * rank + j) * rank + k] = v;
        }
    }
    Ok((labels, table))
}
