use std::collections::HashSet;

use quadabund::abundancy::index_n;
use quadabund::report::{read_report, report_to_string, write_report};
use quadabund::search::{conjecture_probe, enumerate_in_sector, friend_search};
use quadabund::solitary::certify_solitary;
use quadabund::{BigInt, Element, RingId, SmallElement};

#[test]
fn enumeration_is_sorted_and_complete() {
    for ring in RingId::ALL {
        let listed = enumerate_in_sector::<i64>(ring, 400);
        let keys: Vec<_> = listed.iter().map(SmallElement::sort_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{ring}");
        assert!(listed
            .iter()
            .all(|z| z.is_in_sector().unwrap() && z.norm() <= 400));
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let ring = RingId::new(-7).unwrap();
    let texts: Vec<String> = [1, 2, 3, 8]
        .into_iter()
        .map(|w| report_to_string(&friend_search::<BigInt>(ring, 2, 1500, false, w).unwrap()))
        .collect();
    assert!(texts.windows(2).all(|t| t[0] == t[1]));
    let again = friend_search::<BigInt>(ring, 2, 1500, false, 5).unwrap();
    assert_eq!(report_to_string(&again), texts[0]);
}

#[test]
fn report_files_round_trip() {
    let report = friend_search::<BigInt>(RingId::GAUSSIAN, 2, 1000, false, 2).unwrap();
    assert!(!report.groups.is_empty());
    let path = std::env::temp_dir().join(format!("quadabund-report-{}.jsonl", std::process::id()));
    write_report(&report, &path).unwrap();
    let back = read_report::<BigInt>(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back, report);
}

#[test]
fn groups_revalidate_and_exclude_certified_elements() {
    for (d, n, bound) in [
        (-1, 1, 1500),
        (-1, 2, 1500),
        (-2, 2, 1000),
        (-3, 3, 1000),
        (-11, 2, 1000),
    ] {
        let report = friend_search::<BigInt>(RingId::new(d).unwrap(), n, bound, false, 4).unwrap();
        let mut seen = HashSet::new();
        for g in &report.groups {
            assert!(g.is_friend_set());
            for m in &g.members {
                assert!(
                    seen.insert(m.element.clone()),
                    "{} in two groups",
                    m.element
                );
                assert_eq!(index_n(&m.element, n).unwrap().value(), &g.index_key);
                assert!(
                    !certify_solitary(&m.element, n).unwrap().is_certified(),
                    "certified {} has a friend",
                    m.element
                );
            }
        }
    }
}

#[test]
fn equal_norm_pair_is_not_a_friendship() {
    let ring = RingId::GAUSSIAN;
    let z = Element::from_i64(ring, 9, 3);
    let w = Element::from_i64(ring, 3, 9);
    assert_eq!(index_n(&z, 2).unwrap(), index_n(&w, 2).unwrap());
    let report = friend_search::<BigInt>(ring, 2, 10_000, false, 4).unwrap();
    let group = report
        .groups
        .iter()
        .find(|g| g.members.iter().any(|m| m.element == z));
    if let Some(g) = group {
        // membership is owed to some other norm, never to 3+9i alone
        assert!(g.members.iter().any(|m| m.norm != z.norm()));
    }
}

#[test]
fn probe_examples() {
    let ring = RingId::GAUSSIAN;
    let p = conjecture_probe::<BigInt>(ring, 1, 5, 3, 10_000, 4).unwrap();
    assert!(!p.found_friend());
    let p = conjecture_probe::<BigInt>(ring, 1, 3, 2, 10_000, 4).unwrap();
    assert!(!p.found_friend());
    assert!(p.certificate.is_some());
}
