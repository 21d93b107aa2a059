//! Reduced-word enumeration over a finite generating set, stored as a flat
//! arena so words only materialize as strings when reported.

use crate::moebius::MoebiusClass;
use crate::scalar::Real;

/// A letter: generator index plus inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// One enumerated word: its matrix, final letter, length, and a parent
/// pointer into the arena (usize::MAX for length-1 words).
pub(crate) struct WordNode<T: Real> {
    pub matrix: MoebiusClass<T>,
    pub letter: Letter,
    pub len: usize,
    pub parent: usize,
}

/// All nonempty reduced words up to `max_len` over the generators, in
/// breadth-first (deterministic) order.
pub(crate) fn enumerate_reduced_words<T: Real>(
    gens: &[MoebiusClass<T>],
    max_len: usize,
) -> Vec<WordNode<T>> {
    let letters: Vec<(Letter, MoebiusClass<T>)> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            [
                (
                    Letter {
                        gen: i,
                        inverse: false,
                    },
                    *g,
                ),
                (
                    Letter {
                        gen: i,
                        inverse: true,
                    },
                    g.inverse(),
                ),
            ]
        })
        .collect();

    let mut arena: Vec<WordNode<T>> = Vec::new();
    for (letter, matrix) in &letters {
        arena.push(WordNode {
            matrix: *matrix,
            letter: *letter,
            len: 1,
            parent: usize::MAX,
        });
    }

    let mut frontier_start = 0;
    for _ in 2..=max_len {
        let frontier_end = arena.len();
        for idx in frontier_start..frontier_end {
            let last = arena[idx].letter;
            let base = arena[idx].matrix;
            let len = arena[idx].len;
            for (letter, matrix) in &letters {
                if letter.cancels(&last) {
                    continue;
                }
                arena.push(WordNode {
                    matrix: base.compose(matrix),
                    letter: *letter,
                    len: len + 1,
                    parent: idx,
                });
            }
        }
        frontier_start = frontier_end;
    }
    arena
}

/// Renders a word as e.g. "a b^-1 a" given generator names.
pub(crate) fn word_string<T: Real>(arena: &[WordNode<T>], idx: usize, names: &[&str]) -> String {
    let mut letters = Vec::new();
    let mut cur = idx;
    loop {
        letters.push(arena[cur].letter);
        if arena[cur].parent == usize::MAX {
            break;
        }
        cur = arena[cur].parent;
    }
    letters
        .iter()
        .rev()
        .map(|l| {
            let name = names.get(l.gen).copied().unwrap_or("g");
            if l.inverse {
                format!("{name}^-1")
            } else {
                name.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
