use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::rewriting::{CompletionLimits, Rewriting};
use super::word::Word;
use super::Truth;
use crate::error::GroupError;

/// A finitely presented group `<g_0, ..., g_{k-1} | relators>`.
///
/// Elements are stored as rewriting-irreducible words. When completion
/// finished the normal forms are unique and equality is exact; otherwise
/// two different irreducible words may still be equal and comparisons
/// return [`Truth::Unknown`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGroup {
    names: Vec<String>,
    relators: Vec<Word>,
    rewriting: Rewriting,
}

impl FpGroup {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        Self::with_limits(names, relators, CompletionLimits::default())
    }

    pub fn with_limits(
        names: Vec<String>,
        relators: Vec<Word>,
        limits: CompletionLimits,
    ) -> Result<Self, GroupError> {
        let rank = names.len() as i64;
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| l.gen < 0 || l.gen >= rank) {
                return Err(GroupError::InvalidPresentation(format!(
                    "relator uses generator {} outside 0..{rank}",
                    l.gen
                )));
            }
        }
        let rewriting = Rewriting::complete(names.len(), &relators, limits);
        Ok(FpGroup { names, relators, rewriting })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_confluent(&self) -> bool {
        self.rewriting.is_confluent()
    }

    pub fn rewriting(&self) -> &Rewriting {
        &self.rewriting
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        Word::reduce(self.rewriting.reduce(w.letters()))
    }

    /// Equality of two normal forms.
    pub fn equal(&self, a: &Word, b: &Word) -> Truth {
        if a == b {
            Truth::Yes
        } else if self.is_confluent() {
            Truth::No
        } else {
            Truth::Unknown
        }
    }
}
