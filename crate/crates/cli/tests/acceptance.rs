//! One line per acceptance criterion, produced by running `revival verify`
//! exactly as a user would.
//!
//! Criterion 7 compares the rescaled ILW flow with KdV at the same time
//! t = π/7 for δ = 0.01 and N = 32. The per-mode phase mismatch there is
//! δ²k⁵t/15 (about 100 rad at k = 32), so the 0.05 bound cannot be met and the
//! check reports FAIL. Criterion 11 requires `verify` to exit 0 and therefore
//! fails for the same reason. This test pins that outcome: it passes only if
//! every other criterion passes and the failing set is exactly {7, 11}.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

const VERIFY_BUDGET: Duration = Duration::from_secs(300);
const EXPECTED_FAILURES: [u32; 2] = [7, 11];

fn main() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_revival"))
        .arg("verify")
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let text = String::from_utf8(out.stdout).unwrap();

    let mut verdicts: BTreeMap<u32, (bool, String)> = BTreeMap::new();
    for line in text.lines() {
        let passed = if line.starts_with("[PASS]") {
            true
        } else if line.starts_with("[FAIL]") {
            false
        } else {
            continue;
        };
        let id: u32 = line[6..]
            .split_whitespace()
            .next()
            .unwrap()
            .parse()
            .unwrap();
        verdicts.insert(id, (passed, line[7..].to_string()));
    }
    assert_eq!(
        verdicts.keys().copied().collect::<Vec<_>>(),
        (1..=10).collect::<Vec<_>>()
    );

    let exit = out.status.code();
    let in_budget = elapsed <= VERIFY_BUDGET;
    verdicts.insert(
        11,
        (
            exit == Some(0) && in_budget,
            format!(
                "11 verify exits 0 within {}s | exit code {:?}, {:.1}s",
                VERIFY_BUDGET.as_secs(),
                exit,
                elapsed.as_secs_f64()
            ),
        ),
    );

    println!();
    for (passed, detail) in verdicts.values() {
        println!("{} {detail}", if *passed { "PASS" } else { "FAIL" });
    }

    let failing: Vec<u32> = verdicts
        .iter()
        .filter(|(_, v)| !v.0)
        .map(|(k, _)| *k)
        .collect();
    assert!(in_budget, "verify took {elapsed:?}");
    assert_eq!(exit, Some(1), "verify exit code");
    assert_eq!(failing, EXPECTED_FAILURES, "failing criteria");
}
