//! Brute-force game values: unmemoised, unpruned recursion over every play.
//!
//! This is the reference the solver is checked against, so it deliberately
//! shares nothing with the solver's search: its own label array, its own
//! turn bookkeeping and its own edge count.

use crate::game::{Objective, Player, Variant};
use crate::graph::Graph;

pub const ORACLE_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("brute force supports at most {ORACLE_MAX_N} vertices, got {0}")]
pub struct OracleTooLarge(pub usize);

struct Play<'g> {
    edges: &'g [(usize, usize)],
    labels: Vec<Option<u8>>,
    obj: Objective,
    pass_on_last: bool,
}

impl Play<'_> {
    fn evaluate(&self) -> i32 {
        let mut e0 = 0i32;
        let mut e1 = 0i32;
        for &(u, v) in self.edges {
            if self.labels[u] == self.labels[v] {
                e0 += 1;
            } else {
                e1 += 1;
            }
        }
        match self.obj {
            Objective::Cordiality => (e1 - e0).abs(),
            Objective::Balance => e1 - e0,
        }
    }

    fn value(&mut self, mover: Player, passes_left: u8, remaining: usize) -> i32 {
        if remaining == 0 {
            return self.evaluate();
        }
        let mut outcomes = Vec::new();
        for v in 0..self.labels.len() {
            if self.labels[v].is_some() {
                continue;
            }
            self.labels[v] = Some(match mover {
                Player::Admirable => 0,
                Player::Impish => 1,
            });
            outcomes.push(self.value(mover.other(), passes_left, remaining - 1));
            self.labels[v] = None;
        }
        if mover == Player::Impish && passes_left > 0 && (self.pass_on_last || remaining >= 2) {
            outcomes.push(self.value(Player::Admirable, passes_left - 1, remaining));
        }
        match mover {
            Player::Admirable => outcomes.into_iter().min().unwrap(),
            Player::Impish => outcomes.into_iter().max().unwrap(),
        }
    }
}

/// Game value by exhaustive recursion. Limited to 10 vertices.
pub fn brute_force_value(g: &Graph, variant: Variant, obj: Objective) -> Result<i32, OracleTooLarge> {
    if g.n() > ORACLE_MAX_N {
        return Err(OracleTooLarge(g.n()));
    }
    let mut play = Play {
        edges: g.edges(),
        labels: vec![None; g.n()],
        obj,
        pass_on_last: variant.pass_on_last_vertex,
    };
    Ok(play.value(variant.starter, variant.impish_pass_budget, g.n()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(brute_force_value(&p4, Variant::ADMIRABLE_START, Objective::Cordiality), Ok(1));
        let p1 = Graph::path(1).unwrap();
        for v in Variant::ALL {
            for o in [Objective::Cordiality, Objective::Balance] {
                assert_eq!(brute_force_value(&p1, v, o), Ok(0));
            }
        }
        assert_eq!(
            brute_force_value(&Graph::path(11).unwrap(), Variant::ADMIRABLE_START, Objective::Cordiality),
            Err(OracleTooLarge(11))
        );
    }

    #[test]
    fn pass_on_the_last_vertex() {
        // Impish labels the middle, Admirable an end, Impish passes and
        // Admirable must take the other end: both edges cross.
        let p3 = Graph::path(3).unwrap();
        assert_eq!(brute_force_value(&p3, Variant::IMPISH_START_PASS, Objective::Cordiality), Ok(2));
        assert_eq!(brute_force_value(&p3, Variant::IMPISH_START_EARLY_PASS, Objective::Cordiality), Ok(0));
    }

    #[test]
    fn star_k13_fixture() {
        // Regression value from this oracle. Three edges force an odd value and
        // holding the centre with one leaf already gives |e1 - e0| = 1.
        let star = Graph::star(4).unwrap();
        assert_eq!(brute_force_value(&star, Variant::ADMIRABLE_START, Objective::Cordiality), Ok(1));
    }
}
