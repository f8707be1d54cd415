use crate::error::FamilyError;
use crate::family::{ChainEntry, Count, FamilyPresentation, Orientation};
use crate::ordinal::Ordinal;

use super::{ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let span = SourceSpan::new(start, i);
            let n = text[start..i]
                .parse()
                .map_err(|_| ParseError::invalid(span, "number too large"))?;
            out.push((Tok::Nat(n), span));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), SourceSpan::new(start, i)));
        } else if b"+*^();".contains(&c) {
            out.push((Tok::Sym(c as char), SourceSpan::new(i, i + 1)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            let span = SourceSpan::new(i, i + ch.len_utf8());
            return Err(ParseError::unexpected(span, &["a token"], format!("`{ch}`")));
        }
    }
    out.push((Tok::Eof, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

enum Summand {
    Ord(Ordinal),
    Loop { var: String, d: u64 },
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos.saturating_sub(1)].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::unexpected(self.span(), expected, self.peek().describe())
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == s)
    }

    fn expect_sym(&mut self, c: char) -> Result<SourceSpan, ParseError> {
        if self.is_sym(c) {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn expect_ident(&mut self, s: &str) -> Result<SourceSpan, ParseError> {
        if self.is_ident(s) {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[&format!("`{s}`")]))
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Nat(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&["a natural number"])),
        }
    }

    /// `primary := NAT | "w" ["^" primary] | "(" ordexpr ")"`
    fn primary(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(Ordinal::nat(n))
            }
            Tok::Ident(s) if s == "w" => {
                self.bump();
                let e = if self.is_sym('^') {
                    self.bump();
                    self.primary()?
                } else {
                    Ordinal::nat(1)
                };
                Ok(Ordinal::omega_pow(e))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.ordexpr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => Err(self.error(&["a natural number", "`w`", "`(`"])),
        }
    }

    /// `term := "w" ["^" primary] ["*" NAT] | NAT`
    fn ord_term(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(Ordinal::nat(n))
            }
            Tok::Ident(s) if s == "w" => {
                let start = self.span();
                self.bump();
                let e = if self.is_sym('^') {
                    self.bump();
                    self.primary()?
                } else {
                    Ordinal::nat(1)
                };
                let mut c = 1;
                if self.is_sym('*') {
                    self.bump();
                    c = self.nat()?;
                    if c == 0 {
                        return Err(ParseError::invalid(
                            start.join(self.prev_span()),
                            "coefficients must be positive",
                        ));
                    }
                }
                Ok(Ordinal::monomial(e, c))
            }
            _ => Err(self.error(&["a natural number", "`w`"])),
        }
    }

    fn ordexpr(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.ord_term()?;
        while self.is_sym('+') {
            self.bump();
            acc = acc.add(&self.ord_term()?);
        }
        Ok(acc)
    }

    /// A summand of a chain body: an ordinal term, `NAT*IDENT`, or `IDENT`.
    fn summand(&mut self) -> Result<(Summand, SourceSpan), ParseError> {
        let start = self.span();
        match (self.peek().clone(), self.peek_at(1).clone(), self.peek_at(2).clone()) {
            (Tok::Nat(d), Tok::Sym('*'), Tok::Ident(var)) if var != "w" => {
                self.bump();
                self.bump();
                self.bump();
                Ok((Summand::Loop { var, d }, start.join(self.prev_span())))
            }
            (Tok::Ident(var), _, _) if var != "w" => {
                self.bump();
                Ok((Summand::Loop { var, d: 1 }, start))
            }
            _ => {
                let o = self.ord_term()?;
                Ok((Summand::Ord(o), start.join(self.prev_span())))
            }
        }
    }

    fn loop_clause(&mut self) -> Result<(String, SourceSpan), ParseError> {
        let start = self.expect_ident("for")?;
        let var = match self.peek().clone() {
            Tok::Ident(s) if s != "w" => {
                self.bump();
                s
            }
            _ => return Err(self.error(&["a loop variable"])),
        };
        self.expect_ident("in")?;
        self.expect_ident("nat")?;
        Ok((var, start.join(self.prev_span())))
    }

    fn multiplicity(&mut self) -> Result<(Count, SourceSpan), ParseError> {
        let start = self.expect_ident("x")?;
        let count = match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Count::Fin(n)
            }
            Tok::Ident(s) if s == "inf" => {
                self.bump();
                Count::Inf
            }
            Tok::Ident(s) if s == "aleph" => {
                self.bump();
                self.nat()?;
                Count::Inf
            }
            _ => return Err(self.error(&["a natural number", "`inf`", "`aleph`"])),
        };
        Ok((count, start.join(self.prev_span())))
    }

    fn statement(&mut self, index: usize) -> Result<(ChainEntry, SourceSpan), ParseError> {
        let start = self.span();
        let orientation = if self.is_ident("wo") {
            Orientation::Well
        } else if self.is_ident("rwo") {
            Orientation::Reversed
        } else {
            return Err(self.error(&["`wo`", "`rwo`"]));
        };
        self.bump();
        self.expect_sym('(')?;

        let mut summands = vec![self.summand()?];
        while self.is_sym('+') {
            self.bump();
            summands.push(self.summand()?);
        }
        let mut loop_decl = None;
        if self.is_ident("for") {
            loop_decl = Some(self.loop_clause()?);
        }
        self.expect_sym(')')?;

        let mut mult = None;
        loop {
            if self.is_ident("for") && loop_decl.is_none() {
                loop_decl = Some(self.loop_clause()?);
            } else if self.is_ident("x") && mult.is_none() {
                mult = Some(self.multiplicity()?);
            } else {
                break;
            }
        }
        let span = start.join(self.prev_span());
        let entry = build_entry(orientation, summands, loop_decl, mult, span)?;
        entry.validate(index).map_err(|e| ParseError::family(span, e))?;
        Ok((entry, span))
    }
}

fn build_entry(
    orientation: Orientation,
    summands: Vec<(Summand, SourceSpan)>,
    loop_decl: Option<(String, SourceSpan)>,
    mult: Option<(Count, SourceSpan)>,
    span: SourceSpan,
) -> Result<ChainEntry, ParseError> {
    let loop_at = summands
        .iter()
        .position(|(s, _)| matches!(s, Summand::Loop { .. }));
    let Some(loop_at) = loop_at else {
        if let Some((_, s)) = loop_decl {
            return Err(ParseError::invalid(s, "loop variable is not used in the chain type"));
        }
        let value = summands.into_iter().fold(Ordinal::zero(), |acc, (s, _)| match s {
            Summand::Ord(o) => acc.add(&o),
            Summand::Loop { .. } => unreachable!(),
        });
        let count = mult.map_or(Count::Fin(1), |(c, _)| c);
        return Ok(ChainEntry::single(orientation, value, count));
    };

    let (Summand::Loop { var, d }, loop_span) = &summands[loop_at] else {
        unreachable!()
    };
    let Some((declared, _)) = loop_decl else {
        return Err(ParseError::unexpected(
            SourceSpan::new(span.end, span.end),
            &["`for`"],
            format!("unbound variable `{var}`"),
        ));
    };
    if *var != declared {
        return Err(ParseError::invalid(
            *loop_span,
            format!("`{var}` is not the loop variable `{declared}`"),
        ));
    }
    let head = summands[..loop_at]
        .iter()
        .fold(Ordinal::zero(), |acc, (s, _)| match s {
            Summand::Ord(o) => acc.add(o),
            Summand::Loop { .. } => acc,
        });
    let dec = head.decompose();
    let mut a = dec.n;
    for (s, sp) in &summands[loop_at + 1..] {
        match s {
            Summand::Ord(o) if o.is_finite() => {
                a = a
                    .checked_add(o.finite_tail())
                    .ok_or_else(|| ParseError::invalid(*sp, "number too large"))?;
            }
            Summand::Ord(_) => {
                return Err(ParseError::invalid(*sp, "only natural numbers may follow the loop term"));
            }
            Summand::Loop { .. } => {
                return Err(ParseError::invalid(*sp, "the loop variable may appear only once"));
            }
        }
    }
    let per_member = match mult {
        None => 1,
        Some((Count::Fin(c), _)) => c,
        Some((Count::Inf, s)) => {
            return Err(ParseError::invalid(
                s,
                "progression members take a finite multiplicity",
            ));
        }
    };
    Ok(ChainEntry::progression(orientation, dec.gamma, a, *d, per_member))
}

/// Parses a family description. Entries are validated but not normalized.
pub fn parse(text: &str) -> Result<FamilyPresentation, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let mut entries = Vec::new();
    while *p.peek() != Tok::Eof {
        let (entry, _) = p.statement(entries.len())?;
        entries.push(entry);
        if *p.peek() == Tok::Eof {
            break;
        }
        p.expect_sym(';').map_err(|_| p.error(&["`;`", "`x`", "`for`"]))?;
    }
    if entries.is_empty() {
        return Err(ParseError::family(SourceSpan::new(0, text.len()), FamilyError::EmptyFamily));
    }
    Ok(FamilyPresentation::new(entries))
}

/// Parses a standalone ordinal expression such as `w^2*3 + w + 4`.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let o = p.ordexpr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`+`", "end of input"]));
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::ParseErrorKind;
    use crate::golden::{mixed_tails, MIXED_TAILS_TEXT};

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    #[test]
    fn ordinals() {
        assert_eq!(parse_ordinal("w + 4").unwrap(), w().plus_nat(4));
        assert_eq!(parse_ordinal("3 + w").unwrap(), w());
        assert_eq!(
            parse_ordinal("w^2*3 + w + 4").unwrap().to_string(),
            "w^2*3 + w + 4"
        );
        assert_eq!(parse_ordinal("w^(w + 1)").unwrap().to_string(), "w^(w + 1)");
        assert_eq!(parse_ordinal("w^w^2").unwrap(), Ordinal::omega_pow(Ordinal::omega_pow(Ordinal::nat(2))));
        assert_eq!(parse_ordinal("0").unwrap(), Ordinal::zero());
        assert!(parse_ordinal("w +").is_err());
        assert!(parse_ordinal("w*0").is_err());
    }

    #[test]
    fn statements() {
        let f = parse("wo(w + 4) x inf;").unwrap();
        assert_eq!(f.entries, vec![ChainEntry::single(Orientation::Well, w().plus_nat(4), Count::Inf)]);
        let f = parse("wo(w + 1 + 2*n) for n in nat;").unwrap();
        assert_eq!(f.entries, vec![ChainEntry::progression(Orientation::Well, w(), 1, 2, 1)]);
        let f = parse("rwo(w^2 + 3*k + 1 for k in nat) x 2").unwrap();
        assert_eq!(
            f.entries,
            vec![ChainEntry::progression(Orientation::Reversed, Ordinal::omega_pow(2.into()), 1, 3, 2)]
        );
        let f = parse("wo(w + n) x 3 for n in nat;").unwrap();
        assert_eq!(f.entries, vec![ChainEntry::progression(Orientation::Well, w(), 0, 1, 3)]);
        let f = parse("wo(w) x aleph 3; rwo(5)").unwrap();
        assert_eq!(f.entries.len(), 2);
        assert_eq!(f.entries[0].shape, crate::family::Shape::Single { value: w(), count: Count::Inf });
    }

    #[test]
    fn golden_text() {
        assert_eq!(parse(MIXED_TAILS_TEXT).unwrap().normalize().unwrap(), mixed_tails());
    }

    #[test]
    fn errors_carry_spans() {
        let text = "rwo(w) x 2; wo(0);";
        let e = parse(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Family(FamilyError::ZeroOrdinal { entry: 1 }));
        assert_eq!(&text[e.span.start..e.span.end], "wo(0)");

        let e = parse("wo(w + 4) y 2;").unwrap_err();
        assert_eq!(e.span, SourceSpan::new(10, 11));
        assert!(e.expected().contains(&"`;`".to_string()));

        let e = parse("wo(w + 2*n);").unwrap_err();
        assert!(e.expected().contains(&"`for`".to_string()));

        assert!(parse("wo(w + 2*n) for n in nat x inf;").is_err());
        assert!(parse("wo(2*n) for n in nat;").is_err());
        assert!(parse("wo(w + 2*m) for n in nat;").is_err());
        assert!(parse("wo(w + 2*n + w) for n in nat;").is_err());
        assert!(parse("wo(w) x 0;").is_err());
        assert!(parse("wo(w) $").is_err());
        assert_eq!(
            parse("  # nothing\n").unwrap_err().kind,
            ParseErrorKind::Family(FamilyError::EmptyFamily)
        );
    }

    #[test]
    fn line_col() {
        let text = "wo(w);\nwo(0);";
        let e = parse(text).unwrap_err();
        assert_eq!(e.span.line_col(text), (2, 1));
        assert!(e.render(text).starts_with("2:1:"));
    }
}
