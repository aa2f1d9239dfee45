mod oracles;

use oracles::Check;

fn assert_check(c: Check) {
    assert!(c.ok, "{}", c.detail);
}

#[test]
fn readability_matches_hand_table() {
    assert_check(oracles::readability_table());
}

#[test]
fn syllables_track_pronouncing_dictionary() {
    assert_check(oracles::syllable_validation());
}

#[test]
fn kappa_matches_brute_force() {
    assert_check(oracles::fleiss_random(200, 46));
}

#[test]
fn kappa_brute_force_sanity() {
    // two raters always agree on item 0 and disagree on item 1
    let m = vec![vec![0, 0], vec![0, 1]];
    let (k, degenerate) = oracles::brute_force_kappa(&m, 2);
    // P̄ = 0.5, p = (3/4, 1/4), P̄e = 10/16
    assert!(!degenerate);
    assert!((k - (0.5 - 0.625) / 0.375).abs() < 1e-15);
}

#[test]
fn coverage_matches_brute_force() {
    assert_check(oracles::semantic_random(100, 46));
}

#[test]
fn degenerate_semantic_fixtures() {
    assert_check(oracles::semantic_degenerate());
}

#[test]
fn c3_matches_tree_traversal() {
    assert_check(oracles::c3_random_trees(100, 46));
}

#[test]
fn c1_is_monotone_under_insertion() {
    assert_check(oracles::c1_monotonicity(1000, 46));
}

#[test]
fn reference_bidirectional_is_self_consistent() {
    assert_check(oracles::pairwise_bidirectional());
}

#[test]
fn three_rater_means_are_quantized() {
    // 44 items: totals are even, so means step by 2/44
    let (lo, hi) = oracles::attainable_means(44, 3, 2.39);
    assert!((lo - 104.0 / 44.0).abs() < 1e-12);
    assert!((hi - 106.0 / 44.0).abs() < 1e-12);
}
