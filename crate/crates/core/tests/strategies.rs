use edgegame::graph::{enumerate_trees, generate, Family, Graph};
use edgegame::strategy::{
    play_against_heuristic, referee_exhaustive, BreakerHeuristic, CaterpillarStrategy,
    MakerStrategy, RefereeConfig, RefereeError, RefereeOutcome, StrategyError, TreeMakerStrategy,
    TreeMode, WheelStrategy,
};
use edgegame::{maker_wins_with, Ruleset, SolverConfig, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn trees(max_edges: usize) -> Vec<Graph> {
    enumerate_trees(max_edges).unwrap().collect()
}

fn referee<S: MakerStrategy>(g: &Graph, rules: Ruleset, s: S) -> RefereeOutcome {
    let out = referee_exhaustive(g, rules, s, &RefereeConfig::default()).unwrap();
    if !out.maker_always_wins {
        panic!(
            "refuted: {:?}\n{}",
            out.failure,
            out.refutation.as_ref().unwrap().to_transcript()
        );
    }
    out
}

fn wheel(n: usize, m: usize, k: usize) -> RefereeOutcome {
    let g = generate(Family::Wheel, &[n]).unwrap();
    let s = WheelStrategy::new(g.wheel_layout().unwrap(), m, k).unwrap();
    referee(&g, Ruleset::new(m, k).unwrap(), s)
}

#[test]
fn small_wheel_strategies_beat_every_breaker() {
    for m in 2..=4 {
        wheel(3, m, 3);
    }
    for m in [2, 4, 5, 6, 8] {
        wheel(4, m, 4);
    }
    wheel(4, 3, 5);
}

#[test]
fn general_wheel_strategy_beats_every_breaker() {
    for (n, m) in [(5, 2), (5, 3), (6, 2), (6, 3), (7, 2)] {
        wheel(n, m, n);
    }
}

#[test]
fn wheel_strategy_refuses_other_palettes() {
    let g = generate(Family::Wheel, &[4]).unwrap();
    let layout = g.wheel_layout().unwrap();
    assert!(matches!(
        WheelStrategy::new(layout.clone(), 3, 4),
        Err(StrategyError::Precondition(_))
    ));
    assert!(matches!(
        WheelStrategy::new(layout, 1, 5),
        Err(StrategyError::Precondition(_))
    ));
}

#[test]
fn wheel_sample_line_replays_to_a_maker_win() {
    let g = generate(Family::Wheel, &[3]).unwrap();
    let rules = Ruleset::new(2, 3).unwrap();
    let out = wheel(3, 2, 3);
    let text = out.sample.to_transcript().to_string();
    assert!(text.contains("# pair-opening"));
    let parsed = edgegame::game::Transcript::parse(&text).unwrap();
    let end = edgegame::game::replay_transcript(&g, rules, &parsed).unwrap();
    assert_eq!(end.status(), Status::MakerWin);
    assert_eq!(
        out.sample.replay(&g, rules).unwrap().status(),
        Status::MakerWin
    );
}

#[test]
fn tree_strategy_wins_with_two_spare_colors() {
    for g in trees(7) {
        let k = g.max_degree() + 2;
        for m in 1..=3 {
            let s = TreeMakerStrategy::new(&g, m, k, TreeMode::Standard).unwrap();
            let out = referee(&g, Ruleset::new(m, k).unwrap(), s);
            assert!(out.max_maker_color.unwrap() as usize <= g.max_degree() + 1);
        }
    }
}

#[test]
fn fastfill_wins_with_one_spare_color() {
    let star = generate(Family::Star, &[5]).unwrap();
    let s = TreeMakerStrategy::new(&star, 1, 6, TreeMode::FastFill).unwrap();
    referee(&star, Ruleset::new(1, 6).unwrap(), s);

    let spider = Graph::new(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
    let s = TreeMakerStrategy::new(&spider, 2, 4, TreeMode::FastFill).unwrap();
    let out = referee(&spider, Ruleset::new(2, 4).unwrap(), s);
    assert!(out.max_maker_color.unwrap() <= 3);

    for g in trees(7) {
        let diam = g.diameter().unwrap();
        let k = g.max_degree() + 1;
        for m in diam.saturating_sub(2).max(1)..=3 {
            let s = TreeMakerStrategy::new(&g, m, k, TreeMode::FastFill).unwrap();
            let out = referee(&g, Ruleset::new(m, k).unwrap(), s);
            assert!(out.max_maker_color.unwrap() as usize <= g.max_degree());
        }
    }
}

#[test]
fn fastfill_refuses_long_trees() {
    let p7 = generate(Family::Path, &[7]).unwrap();
    assert!(matches!(
        TreeMakerStrategy::new(&p7, 2, 3, TreeMode::FastFill),
        Err(StrategyError::Precondition(_))
    ));
    assert!(matches!(
        TreeMakerStrategy::new(&p7, 2, 3, TreeMode::Standard),
        Err(StrategyError::Precondition(_))
    ));
}

#[test]
fn first_tree_turn_colors_from_the_root_end() {
    let p6 = generate(Family::Path, &[6]).unwrap();
    let rules = Ruleset::new(3, 4).unwrap();
    let mut s = TreeMakerStrategy::new(&p6, 3, 4, TreeMode::Standard).unwrap();
    let turn = s.plan_turn(&edgegame::GameState::new(&p6, rules)).unwrap();
    let edges: Vec<usize> = turn.iter().map(|d| d.mv.edge).collect();
    assert_eq!(edges, vec![0, 1, 2]);
    let colors: std::collections::BTreeSet<u8> = turn.iter().map(|d| d.mv.color).collect();
    assert!(colors.len() <= 2);
}

#[test]
fn skipping_the_join_arc_breaks_the_invariant() {
    let mut caught = 0;
    for g in trees(8) {
        let k = g.max_degree() + 2;
        let s = TreeMakerStrategy::new(&g, 1, k, TreeMode::SkipJoinArc).unwrap();
        let rules = Ruleset::new(1, k).unwrap();
        if let Err(RefereeError::InvariantViolated { trace, message }) =
            referee_exhaustive(&g, rules, s, &RefereeConfig::default())
        {
            assert!(message.contains("uncolored"), "{message}");
            assert_eq!(trace.replay(&g, rules).unwrap().status(), Status::Ongoing);
            caught += 1;
        }
    }
    assert!(caught > 0);
}

#[test]
fn skipping_the_join_arc_loses_a_winnable_game() {
    // Two adjacent degree-4 vertices: the join arc between them can be
    // surrounded by five colors if Maker does not take it at once. The
    // strategies never read the palette size, so both run with one color
    // fewer than the standard bound needs.
    let g = Graph::new(
        10,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (1, 6),
            (5, 7),
            (5, 8),
            (5, 9),
        ],
    )
    .unwrap();
    let rules = Ruleset::new(1, 5).unwrap();
    assert!(
        maker_wins_with(&g, rules, &SolverConfig::relaxed())
            .unwrap()
            .maker_wins
    );
    let unchecked = RefereeConfig {
        check_invariants: false,
        ..RefereeConfig::default()
    };

    let sound = TreeMakerStrategy::new(&g, 1, 6, TreeMode::Standard).unwrap();
    assert!(
        referee_exhaustive(&g, rules, sound, &unchecked)
            .unwrap()
            .maker_always_wins
    );

    let broken = TreeMakerStrategy::new(&g, 1, 6, TreeMode::SkipJoinArc).unwrap();
    let out = referee_exhaustive(&g, rules, broken, &unchecked).unwrap();
    assert!(!out.maker_always_wins);
    let line = out.refutation.unwrap();
    assert!(line
        .entries
        .iter()
        .any(|e| e.side == edgegame::Side::Breaker));
    assert_ne!(line.replay(&g, rules).unwrap().status(), Status::MakerWin);
}

fn caterpillars(max_edges: usize, min_delta: usize) -> Vec<Graph> {
    trees(max_edges)
        .into_iter()
        .filter(|g| g.edge_count() >= 2 && g.spine().is_ok() && g.max_degree() >= min_delta)
        .collect()
}

#[test]
fn caterpillar_strategy_wins_with_delta_colors() {
    for g in caterpillars(10, 4) {
        for m in 2..=3 {
            let k = g.max_degree();
            let s = CaterpillarStrategy::new(&g, m, k).unwrap();
            referee(&g, Ruleset::new(m, k).unwrap(), s);
        }
    }
    let cat = generate(Family::Caterpillar, &[3, 3, 0, 3]).unwrap();
    let s = CaterpillarStrategy::new(&cat, 2, 4).unwrap();
    referee(&cat, Ruleset::new(2, 4).unwrap(), s);
}

#[test]
fn subcubic_caterpillars_win_with_four_colors() {
    for g in caterpillars(8, 3)
        .into_iter()
        .filter(|g| g.max_degree() == 3)
    {
        let s = CaterpillarStrategy::new(&g, 2, 4).unwrap();
        referee(&g, Ruleset::new(2, 4).unwrap(), s);
    }
}

#[test]
fn short_spine_is_colored_on_the_first_turn() {
    let cat = generate(Family::Caterpillar, &[3, 3, 0, 3]).unwrap();
    let spine = cat.spine().unwrap();
    let mut s = CaterpillarStrategy::new(&cat, 2, 4).unwrap();
    let turn = s
        .plan_turn(&edgegame::GameState::new(&cat, Ruleset::new(2, 4).unwrap()))
        .unwrap();
    let edges: Vec<usize> = turn.iter().map(|d| d.mv.edge).collect();
    assert_eq!(edges, spine.spine_edges);
    assert_eq!(turn[0].mv.color, 0);
    assert_eq!(turn[1].mv.color, 1);
}

#[test]
fn caterpillar_strategy_checks_preconditions() {
    let p5 = generate(Family::Path, &[5]).unwrap();
    assert!(CaterpillarStrategy::new(&p5, 2, 4).is_err());
    let cat = generate(Family::Caterpillar, &[3, 3, 0, 3]).unwrap();
    assert!(CaterpillarStrategy::new(&cat, 1, 4).is_err());
    assert!(CaterpillarStrategy::new(&cat, 2, 3).is_err());
    let w4 = generate(Family::Wheel, &[4]).unwrap();
    assert!(CaterpillarStrategy::new(&w4, 2, 4).is_err());
}

#[test]
fn strategy_wins_agree_with_the_solver() {
    let cfg = SolverConfig::relaxed();
    for (n, m, k) in [(3, 2, 3), (4, 2, 4), (4, 3, 5), (4, 4, 4), (5, 2, 5)] {
        let g = generate(Family::Wheel, &[n]).unwrap();
        wheel(n, m, k);
        assert!(
            maker_wins_with(&g, Ruleset::new(m, k).unwrap(), &cfg)
                .unwrap()
                .maker_wins
        );
    }
}

#[test]
fn heuristic_games_end_in_maker_wins() {
    let g = generate(Family::Wheel, &[6]).unwrap();
    let rules = Ruleset::new(2, 6).unwrap();
    for breaker in [
        BreakerHeuristic::Random,
        BreakerHeuristic::FreshColorAttack,
        BreakerHeuristic::Lookahead { depth: 2 },
    ] {
        for seed in 0..5 {
            let s = WheelStrategy::new(g.wheel_layout().unwrap(), 2, 6).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (end, trace) = play_against_heuristic(&g, rules, s, breaker, &mut rng).unwrap();
            assert_eq!(end.status(), Status::MakerWin, "{breaker} seed {seed}");
            assert_eq!(trace.replay(&g, rules).unwrap().status(), Status::MakerWin);
        }
    }
}
