//! Text grammar:
//!
//! ```text
//! gens: <name> <name> ... ; rel: <word> = <word> [; rel: ...] ; meridian: <word> ; longitude: <word>
//! ```
//!
//! A word is a whitespace separated sequence of `name` or `name^k` tokens,
//! `1` is the empty word. `#` starts a comment running to the end of the line.

use super::word::{Letter, Word};
use super::{KnotPresentation, PresentationError, Relation};

struct Clause<'a> {
    key: &'a str,
    body: &'a str,
    key_offset: usize,
    body_offset: usize,
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|s| s.chars().count()).unwrap_or(0) + 1;
    (line, column)
}

fn syntax(text: &str, offset: usize, message: impl Into<String>) -> PresentationError {
    let (line, column) = position(text, offset);
    PresentationError::Syntax { line, column, message: message.into() }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Whitespace separated tokens with their byte offsets relative to `s`.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace().map(move |tok| (tok.as_ptr() as usize - s.as_ptr() as usize, tok))
}

fn clauses(text: &str) -> Result<Vec<Clause<'_>>, PresentationError> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(';') {
        let offset = start;
        start += piece.len() + 1;
        if piece.trim().is_empty() {
            continue;
        }
        let Some(colon) = piece.find(':') else {
            let lead = piece.len() - piece.trim_start().len();
            return Err(syntax(text, offset + lead, "expected `<key>:`"));
        };
        let raw_key = &piece[..colon];
        let key = raw_key.trim();
        let key_offset = offset + raw_key.len() - raw_key.trim_start().len();
        out.push(Clause { key, body: &piece[colon + 1..], key_offset, body_offset: offset + colon + 1 });
    }
    Ok(out)
}

fn parse_word(text: &str, body: &str, body_offset: usize, generators: &[String]) -> Result<Word, PresentationError> {
    let mut word = Word::identity();
    for (rel, tok) in tokens(body) {
        let at = body_offset + rel;
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((name, e)) => {
                let e = e.trim_start_matches('{').trim_end_matches('}');
                let k: i64 = e.parse().map_err(|_| syntax(text, at + name.len() + 1, format!("bad exponent `{e}`")))?;
                (name, k)
            }
            None => (tok, 1),
        };
        if !is_name(name) {
            return Err(syntax(text, at, format!("unexpected token `{tok}`")));
        }
        let Some(g) = generators.iter().position(|n| n == name) else {
            let (line, column) = position(text, at);
            return Err(PresentationError::UnknownGenerator { name: name.to_string(), line, column });
        };
        let letter = if exp < 0 { Letter::inv(g) } else { Letter::new(g) };
        for _ in 0..exp.unsigned_abs() {
            word.push(letter);
        }
    }
    Ok(word)
}

/// Parses and validates a presentation.
pub fn parse_presentation(input: &str) -> Result<KnotPresentation, PresentationError> {
    // blank out comments so offsets still line up with the input
    let text: String = input
        .lines()
        .map(|line| match line.find('#') {
            Some(i) => format!("{}{}", &line[..i], " ".repeat(line.len() - i)),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let text = text.as_str();
    let clauses = clauses(text)?;

    let mut generators: Option<Vec<String>> = None;
    for c in &clauses {
        match c.key {
            "gens" | "generators" => {
                if generators.is_some() {
                    return Err(PresentationError::RepeatedClause("gens"));
                }
                let mut names = Vec::new();
                for (rel, tok) in tokens(c.body) {
                    if !is_name(tok) {
                        return Err(syntax(text, c.body_offset + rel, format!("bad generator name `{tok}`")));
                    }
                    if names.iter().any(|n| n == tok) {
                        return Err(PresentationError::DuplicateGenerator(tok.to_string()));
                    }
                    names.push(tok.to_string());
                }
                generators = Some(names);
            }
            "rel" | "meridian" | "longitude" => {}
            other => return Err(syntax(text, c.key_offset, format!("unknown clause `{other}`"))),
        }
    }
    let generators = generators.ok_or(PresentationError::MissingClause("gens"))?;

    let mut relations = Vec::new();
    let mut meridian = None;
    let mut longitude = None;
    for c in &clauses {
        match c.key {
            "rel" => {
                if c.body.trim().is_empty() {
                    continue;
                }
                let Some(eq) = c.body.find('=') else {
                    return Err(syntax(text, c.body_offset, "relation needs `=`"));
                };
                if c.body[eq + 1..].contains('=') {
                    let at = c.body_offset + eq + 1 + c.body[eq + 1..].find('=').unwrap_or(0);
                    return Err(syntax(text, at, "more than one `=` in relation"));
                }
                let lhs = parse_word(text, &c.body[..eq], c.body_offset, &generators)?;
                let rhs = parse_word(text, &c.body[eq + 1..], c.body_offset + eq + 1, &generators)?;
                relations.push(Relation { lhs, rhs });
            }
            "meridian" => {
                if meridian.is_some() {
                    return Err(PresentationError::RepeatedClause("meridian"));
                }
                meridian = Some(parse_word(text, c.body, c.body_offset, &generators)?);
            }
            "longitude" => {
                if longitude.is_some() {
                    return Err(PresentationError::RepeatedClause("longitude"));
                }
                longitude = Some(parse_word(text, c.body, c.body_offset, &generators)?);
            }
            _ => {}
        }
    }
    let meridian = meridian.ok_or(PresentationError::MissingClause("meridian"))?;
    let longitude = longitude.ok_or(PresentationError::MissingClause("longitude"))?;
    KnotPresentation::new(generators, relations, meridian, longitude)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil() {
        let p =
            parse_presentation("gens: u v ; rel: u v u = v u v ; meridian: u ; longitude: v u v^-1 u v u^-3").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.longitude().len(), 8);
        assert_eq!(p.meridian_generator(), Some(0));
    }

    #[test]
    fn empty_longitude_rejected() {
        let err = parse_presentation("gens: u ; rel: ; meridian: u ; longitude: ").unwrap_err();
        assert_eq!(err, PresentationError::EmptyLongitude);
    }

    #[test]
    fn nonzero_longitude_exponent_rejected() {
        let err = parse_presentation("gens: u v ; rel: u v u = v u v ; meridian: u ; longitude: v u v^-1 u v u^-2")
            .unwrap_err();
        assert_eq!(err, PresentationError::LongitudeExponent(1));
    }

    #[test]
    fn unknown_generator_has_position() {
        let err = parse_presentation("gens: u v ;\nrel: u w = v u ; meridian: u ; longitude: u v^-1").unwrap_err();
        assert_eq!(err, PresentationError::UnknownGenerator { name: "w".into(), line: 2, column: 8 });
    }

    #[test]
    fn syntax_errors_have_position() {
        let err = parse_presentation("gens: u v ;\n  bogus u ; meridian: u ; longitude: 1").unwrap_err();
        assert_eq!(err, syntax_at(2, 3));
        let err = parse_presentation("gens: u v ; rel: u^x = u ; meridian: u ; longitude: u u^-1").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { line: 1, column: 20, .. }));
    }

    fn syntax_at(line: usize, column: usize) -> PresentationError {
        PresentationError::Syntax { line, column, message: "expected `<key>:`".into() }
    }

    #[test]
    fn one_is_identity_and_comments_are_ignored() {
        let p = parse_presentation("# unknot\ngens: u ; # one generator\nmeridian: u ; longitude: u u^-1 u 1 u^-1")
            .unwrap_err();
        // the longitude reduces to the empty word
        assert_eq!(p, PresentationError::EmptyLongitude);
    }

    #[test]
    fn missing_clauses() {
        assert_eq!(
            parse_presentation("rel: ; meridian: u ; longitude: u").unwrap_err(),
            PresentationError::MissingClause("gens")
        );
        assert_eq!(
            parse_presentation("gens: u ; longitude: u").unwrap_err(),
            PresentationError::MissingClause("meridian")
        );
    }
}
