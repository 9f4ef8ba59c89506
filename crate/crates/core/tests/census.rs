use heptalift::census::{census_f2, expected_rank1_count, expected_rank3_f2, spot_check_f2, CensusCounts};

#[test]
fn packed_kernel_matches_generic_ranks() {
    assert_eq!(spot_check_f2(100_000, 0x5eed), None);
}

#[test]
fn counts_are_thread_independent() {
    let runs: Vec<CensusCounts> = [1, 4, 16].into_iter().map(census_f2).collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    let c = &runs[0];
    assert_eq!(c.rank0 + c.rank1 + c.rank2 + c.rank3, 1 << 27);
    assert_eq!(c.total, 1 << 27);
    assert_eq!(c.rank0, 1);
    assert_eq!(c.rank1, expected_rank1_count(2));
    assert_eq!(c.rank3, expected_rank3_f2());
    assert_eq!(c.rank2, 69_193_488);
}
