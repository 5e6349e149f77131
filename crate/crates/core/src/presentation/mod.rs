//! Knot group presentations with a distinguished meridian and longitude,
//! free-group words, the integral group ring and Fox derivatives.

mod group_ring;
mod parse;
mod word;

use std::fmt;

use thiserror::Error;

pub use group_ring::{fox_derivative, GroupRingElement};
pub use parse::parse_presentation;
pub use word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown generator `{name}` at line {line}, column {column}")]
    UnknownGenerator { name: String, line: usize, column: usize },
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("missing `{0}` clause")]
    MissingClause(&'static str),
    #[error("clause `{0}` given more than once")]
    RepeatedClause(&'static str),
    #[error("longitude word is empty")]
    EmptyLongitude,
    #[error("longitude has exponent sum {0} in the abelianization, expected 0")]
    LongitudeExponent(i64),
    #[error("meridian has exponent sum {0} in the abelianization, expected 1")]
    MeridianExponent(i64),
    #[error("relator {index} sides have abelianized images {lhs} and {rhs}")]
    UnbalancedRelator { index: usize, lhs: i64, rhs: i64 },
}

/// Relator written as an equation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    /// The relator word `lhs rhs^-1` used for Fox calculus.
    pub fn relator(&self) -> Word {
        self.lhs.concat(&self.rhs.inverse())
    }
}

/// Finitely presented knot group together with meridian and preferred
/// longitude words.
///
/// All generators are assumed to be meridians, so the abelianization sends
/// every generator to 1 and a word to its total exponent sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotPresentation {
    generators: Vec<String>,
    relations: Vec<Relation>,
    meridian: Word,
    longitude: Word,
}

impl KnotPresentation {
    pub fn new(
        generators: Vec<String>,
        relations: Vec<Relation>,
        meridian: Word,
        longitude: Word,
    ) -> Result<Self, PresentationError> {
        let p = KnotPresentation { generators, relations, meridian, longitude };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), PresentationError> {
        if self.generators.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        for (i, name) in self.generators.iter().enumerate() {
            if name.is_empty() {
                return Err(PresentationError::Syntax { line: 0, column: 0, message: "empty generator name".into() });
            }
            if self.generators[..i].contains(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let n = self.generators.len();
        let words = self.relations.iter().flat_map(|r| [&r.lhs, &r.rhs]).chain([&self.meridian, &self.longitude]);
        for w in words {
            if let Some(g) = w.generators().find(|&g| g >= n) {
                return Err(PresentationError::UnknownGenerator { name: format!("#{g}"), line: 0, column: 0 });
            }
        }
        for (index, r) in self.relations.iter().enumerate() {
            let (lhs, rhs) = (r.lhs.total_exponent(), r.rhs.total_exponent());
            if lhs != rhs {
                return Err(PresentationError::UnbalancedRelator { index, lhs, rhs });
            }
        }
        let m = self.meridian.total_exponent();
        if m != 1 {
            return Err(PresentationError::MeridianExponent(m));
        }
        if self.longitude.free_reduce().is_empty() {
            return Err(PresentationError::EmptyLongitude);
        }
        let l = self.longitude.total_exponent();
        if l != 0 {
            return Err(PresentationError::LongitudeExponent(l));
        }
        Ok(())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relators(&self) -> impl Iterator<Item = Word> + '_ {
        self.relations.iter().map(Relation::relator)
    }

    pub fn meridian(&self) -> &Word {
        &self.meridian
    }

    pub fn longitude(&self) -> &Word {
        &self.longitude
    }

    /// Index of the meridian generator when the meridian word is a single
    /// generator.
    pub fn meridian_generator(&self) -> Option<usize> {
        self.meridian.as_generator()
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    /// Text form accepted by [`parse_presentation`], one clause per line.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for KnotPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = &self.generators;
        writeln!(f, "gens: {} ;", names.join(" "))?;
        for r in &self.relations {
            writeln!(f, "rel: {} = {} ;", r.lhs.display(names), r.rhs.display(names))?;
        }
        writeln!(f, "meridian: {} ;", self.meridian.display(names))?;
        writeln!(f, "longitude: {}", self.longitude.display(names))
    }
}

/// Exponent sum of generator `x` in `w`.
pub fn exponent_sum(w: &Word, x: usize) -> i64 {
    w.exponent_sum(x)
}

/// Freely reduced representative of `w`.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}
