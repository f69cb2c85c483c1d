use laxcomma::cli::fixtures::{kz_fixture, KzFixture};
use laxcomma::thin2::{kz_search, KzSearchBounds};

/// Reruns the exhaustive search (about 30 s in release) and compares it
/// with the bundled fixture. Needs a node budget above the default.
#[test]
#[ignore = "slow; run with LAXCOMMA_MAX_SEARCH=1000000000 -- --ignored"]
fn bundled_fixture_matches_a_fresh_search() {
    let rep = kz_search(KzSearchBounds::default()).unwrap();
    let fresh = KzFixture::from_report(&rep, rep.hits.iter().map(laxcomma::cli::fixtures::monad_spec).collect());
    assert_eq!(fresh, kz_fixture());
}

#[test]
fn one_object_search_agrees_with_the_fixture_shape() {
    let rep = kz_search(KzSearchBounds { max_objects: 1, max_hom: 3 }).unwrap();
    assert!(rep.categories > 0 && rep.monads > 0);
    assert_eq!(rep.hit_count, 0);
    assert!(rep.categories <= kz_fixture().categories);
}
