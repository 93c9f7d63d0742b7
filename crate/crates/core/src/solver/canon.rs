use crate::game::{Color, GameState, Side};

/// Position up to renaming of palette colors.
///
/// Colors are relabeled by order of first appearance when scanning edges
/// by index; side to move and remaining Maker sub-moves are kept verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalKey {
    pub labels: Vec<Option<Color>>,
    pub side: Side,
    pub maker_submoves_left: usize,
}

/// Permutation `perm` of `0..k` with `perm[c]` the canonical label of `c`.
///
/// Used colors get labels `0, 1, ...` in first-appearance order; unused
/// colors follow in increasing order.
pub fn canonical_relabeling(colors: &[Option<Color>], k: usize) -> Vec<Color> {
    let mut perm = vec![Color::MAX; k];
    let mut next: Color = 0;
    for c in colors.iter().flatten() {
        let c = *c as usize;
        if perm[c] == Color::MAX {
            perm[c] = next;
            next += 1;
        }
    }
    for slot in perm.iter_mut() {
        if *slot == Color::MAX {
            *slot = next;
            next += 1;
        }
    }
    perm
}

pub fn canonical_key(s: &GameState) -> CanonicalKey {
    let perm = canonical_relabeling(s.colors(), s.rules().k);
    CanonicalKey {
        labels: s
            .colors()
            .iter()
            .map(|c| c.map(|c| perm[c as usize]))
            .collect(),
        side: s.side_to_move(),
        maker_submoves_left: s.maker_submoves_left(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Ruleset;
    use crate::graph::{generate, Family};

    #[test]
    fn color_swaps_share_a_key() {
        let p4 = generate(Family::Path, &[4]).unwrap();
        let rules = Ruleset::new(3, 3).unwrap();
        let a = GameState::from_parts(&p4, rules, vec![Some(0), Some(1), None], Side::Maker, 1)
            .unwrap();
        let b = GameState::from_parts(&p4, rules, vec![Some(1), Some(0), None], Side::Maker, 1)
            .unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        let c = GameState::from_parts(&p4, rules, vec![Some(1), Some(0), None], Side::Breaker, 0)
            .unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&c));
    }

    #[test]
    fn sub_move_count_is_part_of_the_key() {
        let p4 = generate(Family::Path, &[4]).unwrap();
        let rules = Ruleset::new(3, 3).unwrap();
        let colors = vec![Some(2), None, None];
        let a = GameState::from_parts(&p4, rules, colors.clone(), Side::Maker, 1).unwrap();
        let b = GameState::from_parts(&p4, rules, colors, Side::Maker, 2).unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn fresh_states_share_a_key() {
        let w4 = generate(Family::Wheel, &[4]).unwrap();
        let rules = Ruleset::new(2, 4).unwrap();
        assert_eq!(
            canonical_key(&GameState::new(&w4, rules)),
            canonical_key(&GameState::new(&w4, rules))
        );
    }

    #[test]
    fn relabeling_is_a_permutation() {
        let perm = canonical_relabeling(&[Some(3), None, Some(1), Some(3)], 5);
        assert_eq!(perm, vec![2, 1, 3, 0, 4]);
    }
}
