//! The `.bqhom` text format.
//!
//! ```text
//! hom <name> : <algebraA> -> <algebraB>
//! vertex <v> -> <w> [+ <w2> ...]      # `0` for the empty image
//! arrow <a> -> <lincomb over B>       # factors are arrows of B or `e_<w>`; may be `0`
//! end
//! ```

use crate::quiver::{lex_lincomb, ParseError, RawTerm};
use crate::scalar::Rational;

/// One term `c * f1 * ... * fk` of an arrow image, with powers expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageTerm {
    pub coeff: Rational,
    pub factors: Vec<String>,
}

/// A parsed but unresolved homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    /// `(vertex of A, images in B, line)`.
    pub vertices: Vec<(String, Vec<String>, usize)>,
    /// `(arrow of A, image terms, line, column of the image)`.
    pub arrows: Vec<(String, Vec<ImageTerm>, usize, usize)>,
}

fn split_arrow<'a>(
    rest: &'a str,
    line: usize,
    col: usize,
    what: &str,
) -> Result<(&'a str, &'a str), ParseError> {
    let (lhs, rhs) = rest
        .split_once("->")
        .ok_or_else(|| ParseError::syntax(line, col, format!("expected `{what} <id> -> ...`")))?;
    let lhs = lhs.trim();
    if lhs.is_empty() || lhs.contains(char::is_whitespace) {
        return Err(ParseError::syntax(
            line,
            col,
            format!("expected a single {what} id"),
        ));
    }
    Ok((lhs, rhs))
}

/// Parses a `.bqhom` document.
pub fn parse_hom(text: &str) -> Result<HomSpec, ParseError> {
    let mut header: Option<(String, String, String)> = None;
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut done = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = content.len() - content.trim_start().len() + 1;
        if done {
            return Err(ParseError::syntax(line, col, "content after `end`"));
        }
        let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed, ""),
        };
        let rest_col = col + trimmed.len() - rest.len();
        if header.is_none() && keyword != "hom" {
            return Err(ParseError::syntax(
                line,
                col,
                "expected `hom <name> : <A> -> <B>`",
            ));
        }
        match keyword {
            "hom" => {
                if header.is_some() {
                    return Err(ParseError::syntax(line, col, "duplicate `hom` header"));
                }
                let bad =
                    || ParseError::syntax(line, rest_col, "expected `hom <name> : <A> -> <B>`");
                let (name, ends) = rest.split_once(':').ok_or_else(bad)?;
                let (a, b) = ends.split_once("->").ok_or_else(bad)?;
                let (name, a, b) = (name.trim(), a.trim(), b.trim());
                if [name, a, b]
                    .iter()
                    .any(|s| s.is_empty() || s.contains(char::is_whitespace))
                {
                    return Err(bad());
                }
                header = Some((name.into(), a.into(), b.into()));
            }
            "vertex" => {
                let (v, rhs) = split_arrow(rest, line, rest_col, "vertex")?;
                let images: Vec<String> = rhs.split('+').map(|s| s.trim().to_string()).collect();
                let images = if images == ["0"] { Vec::new() } else { images };
                if images
                    .iter()
                    .any(|s| s.is_empty() || s.contains(char::is_whitespace))
                {
                    return Err(ParseError::syntax(
                        line,
                        rest_col,
                        "expected `<w> [+ <w2> ...]`",
                    ));
                }
                vertices.push((v.to_string(), images, line));
            }
            "arrow" => {
                let (a, rhs) = split_arrow(rest, line, rest_col, "arrow")?;
                let rhs_col = rest_col + rest.len() - rhs.len();
                let terms = lex_lincomb(rhs, line, rhs_col)?
                    .into_iter()
                    .map(|RawTerm { coeff, factors }| ImageTerm {
                        coeff,
                        factors: factors
                            .into_iter()
                            .flat_map(|(name, power, _)| std::iter::repeat_n(name, power))
                            .collect(),
                    })
                    .collect();
                arrows.push((a.to_string(), terms, line, rhs_col));
            }
            "end" if rest.is_empty() => done = true,
            other => {
                return Err(ParseError::syntax(
                    line,
                    col,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }
    if !done {
        return Err(ParseError::syntax(last_line.max(1), 1, "missing `end`"));
    }
    let (name, source, target) = header.expect("header checked");
    Ok(HomSpec {
        name,
        source,
        target,
        vertices,
        arrows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_images() {
        let h = parse_hom(
            "hom f : A -> B\nvertex 1 -> 1 + 2\nvertex 3 -> 0\narrow a -> 2*x*y^2 - e_1\nend\n",
        )
        .unwrap();
        assert_eq!(h.vertices[0].1, vec!["1", "2"]);
        assert!(h.vertices[1].1.is_empty());
        let t = &h.arrows[0].1;
        assert_eq!(t[0].factors, vec!["x", "y", "y"]);
        assert_eq!(t[1].factors, vec!["e_1"]);
    }

    #[test]
    fn errors_have_locations() {
        let e = parse_hom("hom f : A -> B\narrow a -> x +\nend\n").unwrap_err();
        assert_eq!(e.location().0, 2);
        assert!(parse_hom("vertex 1 -> 1\n").is_err());
        assert!(parse_hom("hom f : A -> B\n").is_err());
    }
}
