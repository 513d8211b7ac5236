//! Per-component move rules.
//!
//! A component is a small vertex set played as its own sub-game. Its vertices
//! are addressed by role index (position in `roles`), and it keeps the local
//! sequence of events: who labelled which role, and where the opponent of the
//! strategy's side skipped a local turn. A skip is never observed directly;
//! it is inferred when the strategy's side moves in the component twice in a
//! row.

use crate::game::{Move, Objective, Player};
use crate::graph::{Graph, VertexSet};

/// Largest component handled by the local exact search.
pub const MAX_COMPONENT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    /// The strategy's side labelled this role.
    Mine(u8),
    /// The opponent labelled this role.
    Theirs(u8),
    /// The opponent skipped a local turn.
    Skip,
}

/// Move rule used on a component before falling back to exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Script {
    /// Exact local search on every move.
    Exact,
    /// Label one vertex in each of two role sets, following the opponent
    /// into a set first.
    TwoSet { x: u32, y: u32 },
    /// A six-vertex path with roles in path order.
    Path6,
    /// Two three-vertex arms `0-1-2` and `3-4-5`, roles 0 and 3 next to the
    /// attachment.
    TwoArms,
}

fn lowest(mask: u32) -> Option<u8> {
    (mask != 0).then(|| mask.trailing_zeros() as u8)
}

fn bit(r: u8) -> u32 {
    1 << r
}

fn mine_mask(view: &[Event]) -> u32 {
    view.iter()
        .filter_map(|e| match e {
            Event::Mine(r) => Some(bit(*r)),
            _ => None,
        })
        .fold(0, |a, b| a | b)
}

fn count_mine(view: &[Event]) -> usize {
    view.iter().filter(|e| matches!(e, Event::Mine(_))).count()
}

fn theirs(view: &[Event]) -> impl Iterator<Item = u8> + '_ {
    view.iter().filter_map(|e| match e {
        Event::Theirs(r) => Some(*r),
        _ => None,
    })
}

fn two_set(view: &[Event], free: u32, x: u32, y: u32) -> Option<u8> {
    let mine = mine_mask(view);
    let open = |s: u32| mine & s == 0 && free & s != 0;
    if let Some(Event::Theirs(r)) = view.last() {
        for s in [x, y] {
            if s & bit(*r) != 0 && open(s) {
                return lowest(free & s);
            }
        }
    }
    let pick = [x, y]
        .into_iter()
        .filter(|&s| open(s))
        .min_by_key(|&s| (free & s).count_ones());
    match pick {
        Some(s) => lowest(free & s),
        None => lowest(free),
    }
}

fn mirror_view(view: &[Event], map: impl Fn(u8) -> u8) -> Vec<Event> {
    view.iter()
        .map(|e| match *e {
            Event::Mine(r) => Event::Mine(map(r)),
            Event::Theirs(r) => Event::Theirs(map(r)),
            Event::Skip => Event::Skip,
        })
        .collect()
}

fn mirror_mask(mask: u32, map: impl Fn(u8) -> u8) -> u32 {
    (0..6u8).filter(|&r| mask & bit(r) != 0).map(|r| bit(map(r))).fold(0, |a, b| a | b)
}

fn path6(view: &[Event], free: u32) -> Option<u8> {
    match view.first() {
        Some(Event::Theirs(first)) => {
            let map = |r: u8| if *first >= 3 { 5 - r } else { r };
            let v = mirror_view(view, map);
            let f = mirror_mask(free, map);
            path6_second(&v, f).map(map)
        }
        _ => match count_mine(view) {
            0 => Some(0),
            1 if free & bit(1) != 0 => Some(1),
            1 => Some(4),
            2 => lowest(free & !bit(2)).or(lowest(free)),
            _ => None,
        },
    }
}

/// Opponent opened on roles 0..=2.
fn path6_second(view: &[Event], free: u32) -> Option<u8> {
    let Some(Event::Theirs(first)) = view.first() else {
        return None;
    };
    match (*first, count_mine(view)) {
        (0, 0) => Some(2),
        (2, 0) => Some(0),
        (1, 0) => Some(4),
        (1, _) => two_set(view, free, bit(0) | bit(2), bit(3) | bit(5)),
        // Holding v1 against v3, only {v1, v4, v6} is still bad.
        (2, 1) => lowest(free & (bit(1) | bit(4))).or(lowest(free)),
        // Holding v3 against v1, only {v2, v3, v5} is still bad.
        (0, 1) => lowest(free & (bit(3) | bit(5))).or(lowest(free)),
        (0 | 2, _) => lowest(free),
        _ => None,
    }
}

fn two_arms(view: &[Event], free: u32) -> Option<u8> {
    match view.first() {
        Some(Event::Theirs(first)) => {
            let map = |r: u8| if *first >= 3 { (r + 3) % 6 } else { r };
            let v = mirror_view(view, map);
            let f = mirror_mask(free, map);
            two_arms_second(&v, f).map(map)
        }
        _ => {
            let mine: Vec<u8> = view
                .iter()
                .filter_map(|e| match e {
                    Event::Mine(r) => Some(*r),
                    _ => None,
                })
                .collect();
            match mine.len() {
                0 => Some(0),
                1 if theirs(view).next() != Some(5) => Some(5),
                1 => Some(1),
                2 if mine[1] == 5 => lowest(free & !bit(3)).or(lowest(free)),
                2 if free & bit(3) != 0 => Some(3),
                2 => Some(4),
                _ => None,
            }
        }
    }
}

/// Opponent opened on the first arm.
fn two_arms_second(view: &[Event], free: u32) -> Option<u8> {
    let Some(Event::Theirs(first)) = view.first() else {
        return None;
    };
    match (*first, count_mine(view)) {
        (0, 0) => Some(2),
        (0, 1) if free & bit(3) != 0 => Some(3),
        (0, 1) => Some(5),
        (1, 0) => Some(4),
        (1, _) => two_set(view, free, bit(0) | bit(2), bit(3) | bit(5)),
        (2, 0) => Some(0),
        (2, 1) if free & bit(4) != 0 => Some(4),
        (2, 1) => Some(1),
        (_, 2) => lowest(free),
        _ => None,
    }
}

impl Script {
    fn suggest(self, view: &[Event], free: u32) -> Option<u8> {
        match self {
            Script::Exact => None,
            Script::TwoSet { x, y } => two_set(view, free, x, y),
            Script::Path6 => path6(view, free),
            Script::TwoArms => two_arms(view, free),
        }
    }
}

/// A sub-game on a few vertices with an optional attachment vertex outside.
#[derive(Debug, Clone)]
pub struct Component {
    roles: Vec<usize>,
    attach: Option<usize>,
    script: Script,
    side: Player,
    objective: Objective,
    set: VertexSet,
    events: Vec<Event>,
    /// Whether the exact search lets the opponent skip a local turn.
    skips: bool,
    /// Set once the exact search has stood in for the script.
    used_fallback: bool,
}

impl Component {
    pub fn new(roles: Vec<usize>, attach: Option<usize>, script: Script, side: Player, objective: Objective) -> Self {
        assert!(roles.len() <= MAX_COMPONENT, "component too large");
        let set = roles.iter().copied().collect();
        Component {
            roles,
            attach,
            script,
            side,
            objective,
            set,
            events: Vec::new(),
            skips: true,
            used_fallback: false,
        }
    }

    /// Sets whether the exact search allows the opponent one local skip
    /// after opening the component. On by default.
    pub fn with_skips(mut self, skips: bool) -> Self {
        self.skips = skips;
        self
    }

    pub fn vertices(&self) -> VertexSet {
        self.set
    }

    pub fn roles(&self) -> &[usize] {
        &self.roles
    }

    pub fn attach(&self) -> Option<usize> {
        self.attach
    }

    pub fn script(&self) -> Script {
        self.script
    }

    /// Whether the exact search has supplied at least one move.
    pub fn used_fallback(&self) -> bool {
        self.used_fallback
    }

    pub fn is_started(&self) -> bool {
        !self.events.is_empty()
    }

    fn role_of(&self, v: usize) -> u8 {
        self.roles.iter().position(|&w| w == v).expect("vertex belongs to component") as u8
    }

    fn free_roles(&self, unlabeled: VertexSet) -> u32 {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, &v)| unlabeled.contains(v))
            .map(|(r, _)| bit(r as u8))
            .fold(0, |a, b| a | b)
    }

    fn with_pending_skip(&self) -> Vec<Event> {
        let mut view = self.events.clone();
        if let Some(Event::Mine(_)) = view.last() {
            view.push(Event::Skip);
        }
        view
    }

    pub fn observe(&mut self, player: Player, v: usize) {
        let r = self.role_of(v);
        if player == self.side {
            if let Some(Event::Mine(_)) = self.events.last() {
                self.events.push(Event::Skip);
            }
            self.events.push(Event::Mine(r));
        } else {
            self.events.push(Event::Theirs(r));
        }
    }

    /// Next move for the strategy's side on this component. Requires a free
    /// vertex in the component.
    pub fn choose(&mut self, g: &Graph, unlabeled: VertexSet) -> Move {
        let free = self.free_roles(unlabeled);
        assert!(free != 0, "component has no free vertex");
        let view = self.with_pending_skip();
        let r = match self.script.suggest(&view, free) {
            Some(r) if free & bit(r) != 0 => r,
            _ => {
                self.used_fallback |= self.script != Script::Exact;
                self.exact(g, &view, free)
            }
        };
        Move::Label(self.roles[r as usize])
    }

    pub fn encode(&self, out: &mut Vec<u8>) {
        for e in &self.events {
            out.push(match *e {
                Event::Mine(r) => r,
                Event::Theirs(r) => 32 + r,
                Event::Skip => 64,
            });
        }
        out.push(255);
    }

    fn exact(&self, g: &Graph, view: &[Event], free: u32) -> u8 {
        let k = self.roles.len();
        let mut internal = Vec::new();
        let mut attached = 0u32;
        for i in 0..k {
            for j in i + 1..k {
                if g.has_edge(self.roles[i], self.roles[j]) {
                    internal.push((i as u8, j as u8));
                }
            }
            if let Some(a) = self.attach {
                if g.has_edge(self.roles[i], a) {
                    attached |= bit(i as u8);
                }
            }
        }
        let all = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
        let mine = mine_mask(view);
        let opponent_started = matches!(view.first(), Some(Event::Theirs(_)) | Some(Event::Skip));
        let skipped = view.contains(&Event::Skip);
        let search = LocalSearch {
            internal,
            attached,
            has_attach: self.attach.is_some(),
            all,
            side: self.side,
            objective: self.objective,
        };
        let theirs_mask = all & !free & !mine;
        let mut best: Option<(i32, u8)> = None;
        for r in 0..k as u8 {
            if free & bit(r) == 0 {
                continue;
            }
            let v = search.value(mine | bit(r), theirs_mask, false, self.skips && opponent_started && !skipped);
            let better = match (best, self.side) {
                (None, _) => true,
                (Some((b, _)), Player::Admirable) => v < b,
                (Some((b, _)), Player::Impish) => v > b,
            };
            if better {
                best = Some((v, r));
            }
        }
        best.expect("a free role exists").1
    }
}

struct LocalSearch {
    internal: Vec<(u8, u8)>,
    attached: u32,
    has_attach: bool,
    all: u32,
    side: Player,
    objective: Objective,
}

impl LocalSearch {
    /// Score of a finished local labelling for the strategy's side, taking
    /// the worst case over the attachment's unknown label.
    fn score(&self, mine: u32) -> i32 {
        // zero-labelled roles
        let zero = match self.side {
            Player::Admirable => mine,
            Player::Impish => self.all & !mine,
        };
        let crossing = |a: bool, b: bool| if a != b { 1 } else { -1 };
        let inside: i32 = self
            .internal
            .iter()
            .map(|&(i, j)| crossing(zero & bit(i) != 0, zero & bit(j) != 0))
            .sum();
        let with_label = |attach_zero: bool| {
            let outside: i32 = (0..32u8)
                .filter(|&r| self.attached & bit(r) != 0)
                .map(|r| crossing(zero & bit(r) != 0, attach_zero))
                .sum();
            self.objective.score(inside + outside)
        };
        if !self.has_attach {
            return with_label(false);
        }
        let (a, b) = (with_label(false), with_label(true));
        match self.side {
            Player::Admirable => a.max(b),
            Player::Impish => a.min(b),
        }
    }

    /// Value with the opponent to move (`my_turn == false`) or the side.
    fn value(&self, mine: u32, theirs: u32, my_turn: bool, skip_left: bool) -> i32 {
        let free = self.all & !(mine | theirs);
        if free == 0 {
            return self.score(mine);
        }
        let minimise = (self.side == Player::Admirable) == my_turn;
        let mut best = if minimise { i32::MAX } else { i32::MIN };
        let mut rest = free;
        while rest != 0 {
            let r = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            let v = if my_turn {
                self.value(mine | bit(r), theirs, false, skip_left)
            } else {
                self.value(mine, theirs | bit(r), true, skip_left)
            };
            best = if minimise { best.min(v) } else { best.max(v) };
        }
        if !my_turn && skip_left {
            let v = self.value(mine, theirs, true, false);
            best = if minimise { best.min(v) } else { best.max(v) };
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_all(k: u8) -> u32 {
        (1 << k) - 1
    }

    #[test]
    fn two_set_opening_and_following() {
        let x = bit(0) | bit(2);
        let y = bit(1);
        // Admirable opening on a three-vertex path takes the middle.
        assert_eq!(two_set(&[], free_all(3), x, y), Some(1));
        // Impish opens on an end: take the other end.
        let view = [Event::Theirs(0)];
        assert_eq!(two_set(&view, free_all(3) & !bit(0), x, y), Some(2));
    }

    #[test]
    fn path6_replies() {
        let free = free_all(6);
        assert_eq!(path6(&[], free), Some(0));
        // Impish opens v2: reply v5.
        assert_eq!(path6(&[Event::Theirs(1)], free & !bit(1)), Some(4));
        // Mirrored: Impish opens v5, reply v2.
        assert_eq!(path6(&[Event::Theirs(4)], free & !bit(4)), Some(1));
        // After v2/v5, a skip sends Admirable to {v1, v3}.
        let view = [Event::Theirs(1), Event::Mine(4), Event::Skip];
        assert_eq!(path6(&view, free & !bit(1) & !bit(4)), Some(0));
        // then to {v4, v6}
        let view = [Event::Theirs(1), Event::Mine(4), Event::Skip, Event::Mine(0), Event::Theirs(2)];
        assert_eq!(path6(&view, bit(3) | bit(5)), Some(3));
        // Impish opens v1, Admirable holds v3 and then avoids {v2, v5}.
        let view = [Event::Theirs(0), Event::Mine(2), Event::Theirs(3)];
        assert_eq!(path6(&view, bit(1) | bit(4) | bit(5)), Some(5));
    }

    #[test]
    fn two_arms_replies() {
        let free = free_all(6);
        assert_eq!(two_arms(&[], free), Some(0));
        assert_eq!(two_arms(&[Event::Theirs(1)], free & !bit(1)), Some(4));
        assert_eq!(two_arms(&[Event::Theirs(4)], free & !bit(4)), Some(1));
        // Admirable start, Impish answers v6: Admirable takes v2.
        let view = [Event::Mine(0), Event::Theirs(5)];
        assert_eq!(two_arms(&view, free & !bit(0) & !bit(5)), Some(1));
    }
}
