use octcolor::{colorfulness_report, is_independent};
use octcolor_bench::{antichain, colored_set};

#[test]
fn workloads_are_well_formed() {
    let (set, coloring) = colored_set(50, 3, 1);
    assert_eq!(coloring.len(), set.len());
    assert_eq!(
        coloring.certified_threshold(),
        Some(colorfulness_report(&set, &coloring).minimal_colorful_threshold)
    );
    assert!(is_independent(&antichain(40, 2)));
}
