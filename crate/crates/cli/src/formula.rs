//! The model formula `RESPONSE ~ GROUP (+ COVARIATE)*`.
//!
//! Names are runs of characters other than whitespace, `~`, `+` and a
//! backtick. A name containing any of those (other than a backtick) can be
//! written between backticks.

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub response: String,
    /// The first right-hand term.
    pub group: String,
    /// Group level coded 0. `None` picks the lexicographically smaller level.
    pub reference_level: Option<String>,
    pub covariates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Tilde,
    Plus,
}

fn syntax(offset: usize, message: impl Into<String>) -> CliError {
    CliError::FormulaSyntax {
        offset,
        message: message.into(),
    }
}

fn is_name_char(c: char) -> bool {
    !(c.is_whitespace() || c == '~' || c == '+' || c == '`')
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '~' => {
                chars.next();
                tokens.push((at, Token::Tilde));
            }
            '+' => {
                chars.next();
                tokens.push((at, Token::Plus));
            }
            '`' => {
                chars.next();
                let start = at + 1;
                let mut end = None;
                for (i, c) in chars.by_ref() {
                    if c == '`' {
                        end = Some(i);
                        break;
                    }
                }
                let end = end.ok_or_else(|| syntax(at, "unterminated backtick name"))?;
                if end == start {
                    return Err(syntax(at, "empty name"));
                }
                tokens.push((at, Token::Name(text[start..end].to_string())));
            }
            _ => {
                let mut end = text.len();
                while let Some(&(i, c)) = chars.peek() {
                    if !is_name_char(c) {
                        end = i;
                        break;
                    }
                    chars.next();
                }
                tokens.push((at, Token::Name(text[at..end].to_string())));
            }
        }
    }
    Ok(tokens)
}

/// Parses a formula. The reference level is left unset.
pub fn parse_formula(text: &str) -> Result<ModelSpec> {
    let tokens = tokenize(text)?;
    let mut it = tokens.into_iter();
    let end = text.len();

    let expect_name = |it: &mut std::vec::IntoIter<(usize, Token)>, what: &str| match it.next() {
        Some((_, Token::Name(name))) => Ok(name),
        Some((at, Token::Tilde)) => Err(syntax(at, format!("expected {what}, found `~`"))),
        Some((at, Token::Plus)) => Err(syntax(at, format!("expected {what}, found `+`"))),
        None => Err(syntax(end, format!("expected {what}, found end of input"))),
    };

    let response = expect_name(&mut it, "a response name")?;
    match it.next() {
        Some((_, Token::Tilde)) => {}
        Some((at, _)) => return Err(syntax(at, "expected `~` after the response")),
        None => return Err(syntax(end, "expected `~` after the response")),
    }
    let group = expect_name(&mut it, "a group name")?;
    let mut covariates = Vec::new();
    loop {
        match it.next() {
            None => break,
            Some((_, Token::Plus)) => covariates.push(expect_name(&mut it, "a covariate name")?),
            Some((at, Token::Tilde)) => return Err(syntax(at, "unexpected `~`")),
            Some((at, Token::Name(_))) => return Err(syntax(at, "expected `+` between terms")),
        }
    }

    let mut seen = vec![response.as_str(), group.as_str()];
    if response == group {
        return Err(CliError::DuplicateTerm(group));
    }
    for c in &covariates {
        if seen.contains(&c.as_str()) {
            return Err(CliError::DuplicateTerm(c.clone()));
        }
        seen.push(c);
    }

    Ok(ModelSpec {
        response,
        group,
        reference_level: None,
        covariates,
    })
}

fn render_name(name: &str) -> String {
    if !name.is_empty() && name.chars().all(is_name_char) {
        name.to_string()
    } else {
        format!("`{name}`")
    }
}

/// Canonical text of a spec; `parse_formula(&render(s))` gives back `s`
/// (reference level aside, which is not part of the formula).
pub fn render(spec: &ModelSpec) -> String {
    let mut out = format!("{} ~ {}", render_name(&spec.response), render_name(&spec.group));
    for c in &spec.covariates {
        out.push_str(" + ");
        out.push_str(&render_name(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_formulas() {
        let s = parse_formula("G3 ~ address").unwrap();
        assert_eq!((s.response.as_str(), s.group.as_str()), ("G3", "address"));
        assert!(s.covariates.is_empty());
        let s = parse_formula("G3~address+traveltime +  failures").unwrap();
        assert_eq!(s.covariates, ["traveltime", "failures"]);
        assert_eq!(render(&s), "G3 ~ address + traveltime + failures");
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_formula("G3 ~ ~ address").unwrap_err() {
            CliError::FormulaSyntax { offset, .. } => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse_formula("G3 ~ address +").unwrap_err() {
            CliError::FormulaSyntax { offset, .. } => assert_eq!(offset, 14),
            other => panic!("{other:?}"),
        }
        match parse_formula("G3 address").unwrap_err() {
            CliError::FormulaSyntax { offset, .. } => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula(""), Err(CliError::FormulaSyntax { offset: 0, .. })));
        assert!(matches!(parse_formula("y ~ `g"), Err(CliError::FormulaSyntax { offset: 4, .. })));
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(matches!(parse_formula("y ~ g + x + x"), Err(CliError::DuplicateTerm(t)) if t == "x"));
        assert!(matches!(parse_formula("y ~ y"), Err(CliError::DuplicateTerm(_))));
        assert!(matches!(parse_formula("y ~ g + y"), Err(CliError::DuplicateTerm(_))));
    }

    #[test]
    fn quoted_names() {
        let s = parse_formula("`final grade` ~ `home+addr` + x.1").unwrap();
        assert_eq!(s.response, "final grade");
        assert_eq!(s.group, "home+addr");
        assert_eq!(render(&s), "`final grade` ~ `home+addr` + x.1");
    }
}
