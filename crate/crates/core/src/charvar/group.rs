use serde::{Deserialize, Serialize};

use super::CharVarError;

/// A generator or its inverse. Generators are numbered `a₁ = 0, b₁ = 1, a₂ = 2, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    /// Signed one-based index: `+i` for the generator `i − 1`, `−i` for its inverse.
    pub fn signed(self) -> i64 {
        let i = self.generator as i64 + 1;
        if self.inverse {
            -i
        } else {
            i
        }
    }
}

/// The surface group `⟨a₁, b₁, …, a_g, b_g | Π[aᵢ, bᵢ]⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    genus: usize,
    relator: Vec<Letter>,
}

impl Presentation {
    pub fn surface(genus: usize) -> Result<Self, CharVarError> {
        if genus < 2 {
            return Err(CharVarError::Genus(genus));
        }
        let relator = (0..genus)
            .flat_map(|i| {
                let (a, b) = (2 * i, 2 * i + 1);
                [
                    Letter::new(a, false),
                    Letter::new(b, false),
                    Letter::new(a, true),
                    Letter::new(b, true),
                ]
            })
            .collect();
        Ok(Presentation { genus, relator })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generator_count(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> &[Letter] {
        &self.relator
    }

    /// Parses signed one-based indices.
    pub fn word(&self, signed: &[i64]) -> Result<Vec<Letter>, CharVarError> {
        signed
            .iter()
            .map(|&s| {
                let g = s.unsigned_abs() as usize;
                if s == 0 || g > self.generator_count() {
                    return Err(CharVarError::BadWord(s));
                }
                Ok(Letter::new(g - 1, s < 0))
            })
            .collect()
    }

    pub fn generator_name(&self, i: usize) -> String {
        format!("{}{}", if i % 2 == 0 { 'a' } else { 'b' }, i / 2 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_shape() {
        let p = Presentation::surface(3).unwrap();
        assert_eq!(p.relator().len(), 12);
        for g in 0..p.generator_count() {
            let uses: Vec<_> = p.relator().iter().filter(|l| l.generator == g).collect();
            assert_eq!(uses.len(), 2);
            assert_ne!(uses[0].inverse, uses[1].inverse);
        }
        let signed: Vec<i64> = p.relator()[..4].iter().map(|l| l.signed()).collect();
        assert_eq!(signed, vec![1, 2, -1, -2]);
        assert!(Presentation::surface(1).is_err());
        assert!(matches!(p.word(&[1, 7]), Err(CharVarError::BadWord(7))));
    }
}
