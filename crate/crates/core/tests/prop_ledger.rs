use biovi_core::ledger::{summarize, Ledger, PulseRecord};
use proptest::prelude::*;

fn value() -> impl Strategy<Value = f64> {
    prop_oneof![
        1e-3..1e3f64,
        -1e3..-1e-3f64,
        any::<f64>().prop_filter("finite and nonzero", |x| x.is_finite() && *x != 0.0),
    ]
}

fn records(max: usize) -> impl Strategy<Value = Vec<PulseRecord>> {
    prop::collection::vec(
        (1u64..1000, value(), value(), value(), any::<[bool; 3]>()),
        1..max,
    )
    .prop_map(|rows| {
        let mut dir = 0;
        rows.into_iter()
            .map(|(step, in3, in2, in1, o)| {
                dir += step;
                PulseRecord {
                    dir,
                    in3,
                    in2,
                    in1,
                    out3: o[0],
                    out2: o[1],
                    out1: o[2],
                }
            })
            .collect()
    })
}

fn moderate_records(max: usize) -> impl Strategy<Value = Vec<PulseRecord>> {
    prop::collection::vec((1e-3..1e3f64, 1e-3..1e3f64, 1e-3..1e3f64), 1..max).prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (in3, in2, in1))| PulseRecord {
                dir: i as u64 + 1,
                in3,
                in2,
                in1,
                out3: true,
                out2: false,
                out1: true,
            })
            .collect()
    })
}

fn ledger(rows: &[PulseRecord]) -> Ledger {
    let mut l = Ledger::new();
    for r in rows {
        l.append(*r).unwrap();
    }
    l
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn csv_round_trip_is_identity(rows in records(40)) {
        let l = ledger(&rows);
        let text = l.to_csv();
        let back = Ledger::load_csv(text.as_bytes()).unwrap();
        prop_assert_eq!(back.records().len(), rows.len());
        for (a, b) in back.records().iter().zip(&rows) {
            prop_assert_eq!(a.dir, b.dir);
            prop_assert_eq!(a.in3.to_bits(), b.in3.to_bits());
            prop_assert_eq!(a.in2.to_bits(), b.in2.to_bits());
            prop_assert_eq!(a.in1.to_bits(), b.in1.to_bits());
            prop_assert_eq!(a.outputs(), b.outputs());
        }
        prop_assert_eq!(back.to_csv(), text);
    }

    #[test]
    fn appends_never_touch_earlier_records(rows in records(40), extra in records(10)) {
        let mut l = ledger(&rows);
        let before = l.to_csv();
        let shift = l.last_dir().unwrap();
        for r in extra {
            l.append(PulseRecord { dir: r.dir + shift, ..r }).unwrap();
        }
        prop_assert!(l.to_csv().starts_with(&before));
        prop_assert_eq!(&l.records()[..rows.len()], &rows[..]);
    }

    #[test]
    fn stale_dir_is_rejected(rows in records(20), back in 0u64..5) {
        let mut l = ledger(&rows);
        let last = l.last_dir().unwrap();
        let r = PulseRecord { dir: last.saturating_sub(back).max(1), ..rows[0] };
        prop_assert!(l.append(r).is_err());
        prop_assert_eq!(l.records(), &rows[..]);
    }

    #[test]
    fn sums_are_fold_additive(a in moderate_records(60), b in moderate_records(60)) {
        let th = [0.0; 3];
        let la = ledger(&a);
        let lb = ledger(&b);
        let shift = la.last_dir().unwrap();
        let mut joined = la.clone();
        for r in &b {
            joined.append(PulseRecord { dir: r.dir + shift, ..*r }).unwrap();
        }
        let sa = summarize(&la, th).unwrap();
        let sb = summarize(&lb, th).unwrap();
        let sj = summarize(&joined, th).unwrap();
        for g in 0..3 {
            let split = sa.sums[g] + sb.sums[g];
            prop_assert!((sj.sums[g] - split).abs() <= 1e-12 * sj.sums[g].abs(), "{} vs {}", sj.sums[g], split);
        }
        prop_assert_eq!(sj.count, sa.count + sb.count);
    }
}
