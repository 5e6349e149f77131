use std::fmt;

/// A single letter `x` or `x^-1`, referring to a generator by its index in
/// the owning presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// An element of the free group on the generators, stored letter by letter.
///
/// Words are not reduced on construction; call [`Word::free_reduce`] to get the
/// reduced representative. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![Letter::new(g)] }
    }

    /// `g^k`, expanded into |k| letters.
    pub fn power(g: usize, k: i64) -> Self {
        let letter = if k < 0 { Letter::inv(g) } else { Letter::new(g) };
        Word { letters: vec![letter; k.unsigned_abs() as usize] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// Concatenation, without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        self.concat(other).free_reduce()
    }

    /// Commutator `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Freely reduced representative: no adjacent `x x^-1` or `x^-1 x`.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word { letters: stack }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Sum of the exponents of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters.iter().filter(|l| l.generator == g).map(|l| l.exponent()).sum()
    }

    /// Image in the abelianization when every generator is a meridian.
    pub fn total_exponent(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent()).sum()
    }

    /// Returns the generator index when the word is a single positive letter.
    pub fn as_generator(&self) -> Option<usize> {
        match self.letters.as_slice() {
            [l] if !l.inverse => Some(l.generator),
            _ => None,
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters.iter().map(|l| l.generator)
    }

    /// Rewrites generator indices through `map`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Word {
        Word {
            letters: self.letters.iter().map(|l| Letter { generator: map(l.generator), inverse: l.inverse }).collect(),
        }
    }

    /// Renders the word with exponent runs collapsed, e.g. `u^3 v^-1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.exponent();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = self.names.get(l.generator).map(String::as_str).unwrap_or("?");
            if run == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_cancels_pairs() {
        let w = Word::from_letters(vec![Letter::new(0), Letter::inv(0)]);
        assert!(w.free_reduce().is_empty());

        let w = Word::from_letters(vec![Letter::new(0), Letter::new(1), Letter::inv(1), Letter::new(0)]);
        assert_eq!(w.free_reduce(), Word::power(0, 2));
    }

    #[test]
    fn reduce_cascades() {
        // u v v^-1 u^-1 collapses completely
        let w = Word::from_letters(vec![Letter::new(0), Letter::new(1), Letter::inv(1), Letter::inv(0)]);
        assert!(w.free_reduce().is_empty());
    }

    #[test]
    fn exponent_sums() {
        // u v u^-1
        let w = Word::from_letters(vec![Letter::new(0), Letter::new(1), Letter::inv(0)]);
        assert_eq!(w.exponent_sum(0), 0);
        assert_eq!(Word::identity().exponent_sum(0), 0);
    }

    #[test]
    fn display_collapses_runs() {
        let names = vec!["u".to_string(), "v".to_string()];
        let w = Word::power(0, 3).concat(&Word::power(1, -1));
        assert_eq!(w.display(&names).to_string(), "u^3 v^-1");
        assert_eq!(Word::identity().display(&names).to_string(), "1");
    }
}
