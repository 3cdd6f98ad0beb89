//! The line-oriented `.bqa` text format.
//!
//! ```text
//! algebra <name>
//! field Q | F<p>                      # optional, default Q
//! vertices <id> <id> ...              # one or more lines
//! arrow <id> : <vertex> -> <vertex>   # one per line
//! relations                           # optional section
//!   <lincomb>                         # one per line
//! end
//! ```

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{validate_relation, AlgebraSpec, LinComb, Quiver, SpecError};
use crate::scalar::{Field, FieldError, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: {source}")]
    Invalid {
        line: usize,
        col: usize,
        source: SpecError,
    },
    #[error("{line}:{col}: {source}")]
    Field {
        line: usize,
        col: usize,
        source: FieldError,
    },
}

impl ParseError {
    pub fn location(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::Invalid { line, col, .. }
            | ParseError::Field { line, col, .. } => (*line, *col),
        }
    }

    pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }
}

/// Parses `n` or `n/d` with `d` nonzero.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// One term of a linear combination before names are resolved.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RawTerm {
    pub coeff: Rational,
    /// `(name, power, column)` per factor.
    pub factors: Vec<(String, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                return Err(ParseError::syntax(
                    line,
                    col,
                    "identifiers must not start with a digit",
                ));
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), col));
        } else if "+-*/^".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError::syntax(
                line,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

/// Lexes `[sign] term (("+"|"-") term)*`; the literal `0` is the empty combination.
pub(crate) fn lex_lincomb(
    text: &str,
    line: usize,
    col0: usize,
) -> Result<Vec<RawTerm>, ParseError> {
    let toks = tokenize(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    if let [(Tok::Int(z), _)] = toks.as_slice() {
        if z.is_zero() {
            return Ok(Vec::new());
        }
    }
    let mut pos = 0;
    let peek = |pos: usize| toks.get(pos).map(|(t, c)| (t.clone(), *c));
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match peek(pos) {
            Some((Tok::Sym('+'), _)) if !first => pos += 1,
            Some((Tok::Sym('-'), _)) => {
                negative = true;
                pos += 1;
            }
            Some((_, col)) if !first => {
                return Err(ParseError::syntax(line, col, "expected `+` or `-`"));
            }
            None if first => return Err(ParseError::syntax(line, end_col, "empty expression")),
            None => break,
            _ => {}
        }
        first = false;
        let mut coeff = Rational::from_integer(1.into());
        let mut factors = Vec::new();
        if let Some((Tok::Int(n), col)) = peek(pos) {
            pos += 1;
            let mut d = BigInt::from(1);
            if let Some((Tok::Sym('/'), _)) = peek(pos) {
                pos += 1;
                match peek(pos) {
                    Some((Tok::Int(x), c)) => {
                        if x.is_zero() {
                            return Err(ParseError::syntax(line, c, "zero denominator"));
                        }
                        d = x;
                        pos += 1;
                    }
                    other => {
                        return Err(ParseError::syntax(
                            line,
                            other.map_or(end_col, |o| o.1),
                            "expected denominator",
                        ))
                    }
                }
            }
            coeff = Rational::new(n, d);
            match peek(pos) {
                Some((Tok::Sym('*'), _)) => pos += 1,
                _ => {
                    return Err(ParseError::syntax(
                        line,
                        col,
                        "coefficient must be followed by `*` and a path",
                    ))
                }
            }
        }
        loop {
            match peek(pos) {
                Some((Tok::Ident(name), col)) => {
                    pos += 1;
                    let mut power = 1;
                    if let Some((Tok::Sym('^'), _)) = peek(pos) {
                        pos += 1;
                        match peek(pos) {
                            Some((Tok::Int(k), c)) => {
                                power = usize::try_from(&k)
                                    .ok()
                                    .filter(|&k| k >= 1)
                                    .ok_or_else(|| ParseError::syntax(line, c, "bad exponent"))?;
                                pos += 1;
                            }
                            other => {
                                return Err(ParseError::syntax(
                                    line,
                                    other.map_or(end_col, |o| o.1),
                                    "expected exponent",
                                ))
                            }
                        }
                    }
                    factors.push((name, power, col));
                }
                other => {
                    return Err(ParseError::syntax(
                        line,
                        other.map_or(end_col, |o| o.1),
                        "expected arrow",
                    ))
                }
            }
            match peek(pos) {
                Some((Tok::Sym('*'), _)) => pos += 1,
                _ => break,
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push(RawTerm { coeff, factors });
    }
    Ok(terms)
}

/// Resolves raw terms whose factors are arrows of `quiver`.
fn resolve_relation(
    quiver: &Quiver,
    terms: Vec<RawTerm>,
    line: usize,
    col: usize,
) -> Result<LinComb, ParseError> {
    let mut z = LinComb::new();
    for term in terms {
        let mut arrows = Vec::new();
        for (name, power, c) in &term.factors {
            let a = quiver.arrow(name).map_err(|source| ParseError::Invalid {
                line,
                col: *c,
                source,
            })?;
            let arrow = &quiver.arrows()[a];
            if *power > 1 && arrow.source != arrow.target {
                return Err(ParseError::Invalid {
                    line,
                    col: *c,
                    source: SpecError::NonLoopPower(name.clone()),
                });
            }
            arrows.extend(std::iter::repeat_n(a, *power));
        }
        let path = quiver.path(&arrows).ok_or_else(|| ParseError::Invalid {
            line,
            col: term.factors.first().map_or(col, |f| f.2),
            source: SpecError::NotComposable(
                term.factors
                    .iter()
                    .map(|f| f.0.as_str())
                    .collect::<Vec<_>>()
                    .join("*"),
            ),
        })?;
        z.add_term(path, term.coeff);
    }
    Ok(z)
}

#[derive(PartialEq)]
enum Section {
    Header,
    Relations,
    Done,
}

/// Parses and validates a `.bqa` document.
pub fn parse_algebra(text: &str) -> Result<AlgebraSpec, ParseError> {
    let mut name: Option<String> = None;
    let mut field = Field::Rational;
    let mut quiver = Quiver::new(Vec::<String>::new(), Vec::new()).unwrap();
    let mut relations = Vec::new();
    let mut section = Section::Header;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let indent = content.len() - content.trim_start().len();
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = content[..indent].chars().count() + 1;
        let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed, ""),
        };
        let rest_col = col + trimmed.chars().count() - rest.chars().count();

        if section == Section::Done {
            return Err(ParseError::syntax(line, col, "content after `end`"));
        }
        if keyword == "end" && rest.is_empty() {
            if name.is_none() {
                return Err(ParseError::syntax(line, col, "missing `algebra` header"));
            }
            section = Section::Done;
            continue;
        }
        if section == Section::Relations {
            let terms = lex_lincomb(trimmed, line, col)?;
            let r = resolve_relation(&quiver, terms, line, col)?;
            validate_relation(&quiver, &r).map_err(|source| ParseError::Invalid {
                line,
                col,
                source,
            })?;
            check_coefficients(&r, field).map_err(|source| ParseError::Field {
                line,
                col,
                source,
            })?;
            relations.push(r);
            continue;
        }
        if name.is_none() && keyword != "algebra" {
            return Err(ParseError::syntax(line, col, "expected `algebra <name>`"));
        }
        match keyword {
            "algebra" => {
                if name.is_some() {
                    return Err(ParseError::syntax(line, col, "duplicate `algebra` header"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(ParseError::syntax(line, rest_col, "expected a single name"));
                }
                name = Some(rest.to_string());
            }
            "field" => {
                field = rest.parse().map_err(|source| ParseError::Field {
                    line,
                    col: rest_col,
                    source,
                })?;
            }
            "vertices" => {
                if rest.is_empty() {
                    return Err(ParseError::syntax(line, rest_col, "expected vertex ids"));
                }
                let mut offset = 0;
                for id in rest.split_whitespace() {
                    let at = rest[offset..].find(id).unwrap() + offset;
                    offset = at + id.len();
                    quiver
                        .add_vertex(id.to_string())
                        .map_err(|source| ParseError::Invalid {
                            line,
                            col: rest_col + rest[..at].chars().count(),
                            source,
                        })?;
                }
            }
            "arrow" => {
                let bad = || {
                    ParseError::syntax(
                        line,
                        rest_col,
                        "expected `arrow <id> : <vertex> -> <vertex>`",
                    )
                };
                let (id, ends) = rest.split_once(':').ok_or_else(bad)?;
                let (s, t) = ends.split_once("->").ok_or_else(bad)?;
                let (id, s, t) = (id.trim(), s.trim(), t.trim());
                if id.is_empty() || s.is_empty() || t.is_empty() {
                    return Err(bad());
                }
                quiver
                    .add_arrow(id.to_string(), s, t)
                    .map_err(|source| ParseError::Invalid {
                        line,
                        col: rest_col,
                        source,
                    })?;
            }
            "relations" if rest.is_empty() => section = Section::Relations,
            other => {
                return Err(ParseError::syntax(
                    line,
                    col,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }
    if section != Section::Done {
        return Err(ParseError::syntax(last_line.max(1), 1, "missing `end`"));
    }
    let name = name.expect("header checked");
    AlgebraSpec::new(name, field, quiver, relations).map_err(|source| ParseError::Invalid {
        line: last_line,
        col: 1,
        source,
    })
}

fn check_coefficients(r: &LinComb, field: Field) -> Result<(), FieldError> {
    match field {
        Field::Rational => Ok(()),
        Field::Prime(_) => {
            for (_, c) in r.terms() {
                crate::scalar::Fp::from_rational(c, field)?;
            }
            Ok(())
        }
    }
}

/// Canonical text of a spec. Declaration order is preserved, coefficients are in lowest terms
/// and `parse_algebra(serialize_algebra(s)) == s`.
pub fn serialize_algebra(spec: &AlgebraSpec) -> String {
    let q = &spec.quiver;
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", spec.name));
    out.push_str(&format!("field {}\n", spec.field));
    if q.vertex_count() > 0 {
        out.push_str(&format!("vertices {}\n", q.vertices().join(" ")));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            a.id,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    if !spec.relations.is_empty() {
        out.push_str("relations\n");
        for r in &spec.relations {
            out.push_str("  ");
            out.push_str(&q.lincomb_string(r));
            out.push('\n');
        }
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: &str = "\
# A3 with one zero relation
algebra E1
vertices 1 2 3
arrow a : 1 -> 2
arrow b : 2 -> 3
relations
  a*b
end
";

    #[test]
    fn reads_back_e1() {
        let spec = parse_algebra(E1).unwrap();
        assert_eq!(spec.name, "E1");
        assert_eq!(spec.field, Field::Rational);
        assert_eq!(spec.quiver.arrow_count(), 2);
        assert_eq!(spec.relations.len(), 1);
        assert_eq!(spec.relations[0].degree(), Some(2));
        let text = serialize_algebra(&spec);
        assert_eq!(parse_algebra(&text).unwrap(), spec);
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let text = "algebra X\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n\
                    arrow c : 1 -> 3\nrelations\n  a*b - c\nend\n";
        let err = parse_algebra(text).unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Invalid {
                    line: 7,
                    source: SpecError::Inhomogeneous(_),
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn coefficients_and_powers() {
        let text = "algebra L\nfield F7\nvertices v\narrow x : v -> v\narrow y : v -> v\n\
                    relations\n  x^2 - 3/2*y*x\n  -x*y + y^2\nend\n";
        let spec = parse_algebra(text).unwrap();
        assert_eq!(spec.field, Field::Prime(7));
        let s = serialize_algebra(&spec);
        assert!(s.contains("  x^2 - 3/2*y*x\n"), "{s}");
        assert!(s.contains("  -x*y + y^2\n"), "{s}");
        assert_eq!(parse_algebra(&s).unwrap(), spec);
    }

    #[test]
    fn error_locations() {
        let err = parse_algebra("algebra A\nvertices 1\narrow a : 1 -> 2\nend\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                line: 3,
                source: SpecError::UnknownVertex(_),
                ..
            }
        ));
        let err =
            parse_algebra("algebra A\nvertices 1 2\narrow a : 1 -> 2\nrelations\n  a *+ a\nend\n")
                .unwrap_err();
        assert_eq!(err.location(), (5, 6));
        let err = parse_algebra("vertices 1\n").unwrap_err();
        assert_eq!(err.location(), (1, 1));
        let err = parse_algebra("algebra A\nvertices 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
        let err = parse_algebra("algebra A\nvertices 1 1\nend\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                source: SpecError::DuplicateVertex(_),
                col: 12,
                ..
            }
        ));
        let err = parse_algebra(
            "algebra A\nvertices 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\nrelations\n  a*b\nend\n",
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                source: SpecError::NotComposable(_),
                ..
            }
        ));
        let err =
            parse_algebra("algebra A\nvertices 1 2\narrow a : 1 -> 2\nrelations\n  a^2\nend\n")
                .unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                source: SpecError::NonLoopPower(_),
                ..
            }
        ));
        let err = parse_algebra("algebra A\nfield F6\nend\n").unwrap_err();
        assert!(matches!(err, ParseError::Field { .. }));
        let err = parse_algebra(
            "algebra A\nfield F7\nvertices v\narrow x : v -> v\nrelations\n  1/7*x^2\nend\n",
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::Field { .. }));
    }

    #[test]
    fn lincomb_lexing() {
        assert!(lex_lincomb("0", 1, 1).unwrap().is_empty());
        let t = lex_lincomb("2*a*b - c^3", 1, 1).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].coeff, Rational::from_integer((-1).into()));
        assert_eq!(t[1].factors[0].1, 3);
        assert!(lex_lincomb("2", 1, 1).is_err());
        assert!(lex_lincomb("a b", 1, 1).is_err());
        assert_eq!(
            parse_rational("-6/4"),
            Some(Rational::new((-3).into(), 2.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
    }
}
