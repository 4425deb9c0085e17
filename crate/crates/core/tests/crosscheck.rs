use enarena::harness::{crosscheck, Pair};

#[test]
fn all_pairs_agree_on_two_hundred_seeds() {
    for pair in Pair::ALL {
        let report = crosscheck(pair, 1, std::env::var("SEEDS").map_or(200, |s| s.parse().unwrap()), None).unwrap();
        println!("{pair}: {} instances, {} skipped", report.instances, report.skipped);
        assert!(report.ok(), "{pair}: {:#?}", report.divergences);
    }
}
