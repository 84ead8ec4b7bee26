//! Acceptance suite. Each test covers one numbered criterion and prints a
//! single `criterion N: PASS` / `criterion N: FAIL` line (visible with
//! `--nocapture`; failures always surface through the harness).

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use efsynth::distinguish::phi_set;
use efsynth::efgame::{duplicator_wins, efsim, r_type};
use efsynth::formulas::{expand, qr_core, MacroFormula};
use efsynth::formulas::{CountOp, DistOp, EqOp};
use efsynth::semantics::{eval_core, eval_macro, game_winner, Assignment, GameResult};
use efsynth::strings::l_segmentation;
use efsynth::synthesis::{
    check_consistent, minimal_rank, synthesize, synthesize_minimized,
};
use efsynth::{Alphabet, Sample, StringStructure};

fn report(n: u32, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("criterion {n}: PASS"),
        Err(cause) => {
            println!("criterion {n}: FAIL");
            resume_unwind(cause);
        }
    }
}

fn s(text: &str) -> StringStructure {
    StringStructure::parse(text).unwrap()
}

/// Every string over `alphabet` with length in `lengths`, sharing one
/// alphabet so cross-pair games are well-formed.
fn universe(
    alphabet: &str,
    lengths: std::ops::RangeInclusive<usize>,
) -> Vec<StringStructure> {
    let alpha = Alphabet::new(alphabet.chars()).unwrap();
    let mut out = Vec::new();
    for len in lengths {
        for word in alpha.strings_of_len(len) {
            let text: String = word.iter().collect();
            out.push(StringStructure::new(&text, alpha.clone()).unwrap());
        }
    }
    out
}

/// Consistency of a sentence with a sample under the macro evaluator and,
/// independently, under the core evaluator on the expansion.
fn consistent_both_ways(sample: &Sample, formula: &MacroFormula) -> bool {
    if !check_consistent(sample, formula).consistent() {
        return false;
    }
    let core = expand(formula);
    let env = Assignment::new();
    sample
        .positives()
        .iter()
        .all(|u| eval_core(u, &core, &env).unwrap())
        && sample
            .negatives()
            .iter()
            .all(|v| !eval_core(v, &core, &env).unwrap())
}

#[test]
fn criterion_1_occurrence_statistics() {
    report(1, || {
        let started = Instant::now();
        let w = s("ababababbababaaba");
        let alpha: Vec<char> = "aba".chars().collect();
        let occ = w.free_occurrences(&alpha).unwrap();
        assert_eq!(occ.positions(), &[4, 6, 11, 13]);
        assert_eq!(w.gamma(&alpha).unwrap(), 4);
        let segments = l_segmentation(&occ, 4);
        let positions: Vec<&[usize]> = segments.iter().map(|seg| seg.positions()).collect();
        assert_eq!(positions, [&[4usize, 6][..], &[11, 13]]);
        assert_eq!(w.sigma(&alpha).unwrap(), 2);
        assert!(started.elapsed() < Duration::from_millis(1), "{:?}", started.elapsed());
    });
}

#[test]
fn criterion_2_word_sample() {
    report(2, || {
        let started = Instant::now();
        let sample = Sample::new(
            &["stviil".into(), "stviie".into()],
            &["ktvive".into(), "stpiie".into()],
            None,
        )
        .unwrap();
        assert_eq!(minimal_rank(&sample).unwrap(), 1);

        let plain = synthesize(&sample).unwrap();
        assert_eq!(plain.rank, 1);
        assert!(consistent_both_ways(&sample, &plain.to_macro()));

        let member = |u: &str, v: &str, m: MacroFormula| {
            assert!(
                phi_set(&s(u), &s(v), 1).unwrap().contains(&m),
                "{m:?} missing from the rank-1 set of ({u},{v})"
            );
        };
        member("stviil", "ktvive", MacroFormula::Pref { cmp: EqOp::Eq, k: 1, s: "s".into() });
        member("stviil", "stpiie", MacroFormula::Suff { cmp: EqOp::Ne, k: 1, s: "e".into() });
        member("stviie", "ktvive", MacroFormula::Pref { cmp: EqOp::Eq, k: 1, s: "s".into() });
        member("stviie", "stpiie", MacroFormula::Sigma { cmp: CountOp::Lt, alpha: "p".into(), n: 1 });

        let minimized = synthesize_minimized(&sample, 16).unwrap();
        assert_eq!(minimized.disjuncts.len(), 1);
        assert!(!minimized.greedy_fallback);
        assert!(consistent_both_ways(&sample, &minimized.to_macro()));

        let handpicked = MacroFormula::and(vec![
            MacroFormula::Pref { cmp: EqOp::Eq, k: 1, s: "s".into() },
            MacroFormula::Gamma { cmp: CountOp::Ge, alpha: "v".into(), n: 1 },
        ]);
        assert!(consistent_both_ways(&sample, &handpicked));

        assert!(started.elapsed() < Duration::from_secs(1), "{:?}", started.elapsed());
    });
}

#[test]
fn criterion_3_distinguishability_examples() {
    report(3, || {
        let set = phi_set(&s("aaacbbb"), &s("aaabbbbb"), 2).unwrap();
        let contains = |m: &MacroFormula| set.contains(m);
        assert!(contains(&MacroFormula::Pref { cmp: EqOp::Eq, k: 4, s: "aaac".into() }));
        assert!(contains(&MacroFormula::Pref { cmp: EqOp::Ne, k: 4, s: "aaab".into() }));
        assert!(!contains(&MacroFormula::Pref { cmp: EqOp::Eq, k: 3, s: "aaa".into() }));
        assert!(!contains(&MacroFormula::Pref { cmp: EqOp::Ne, k: 3, s: "aaa".into() }));
        assert!(contains(&MacroFormula::Gamma { cmp: CountOp::Ge, alpha: "c".into(), n: 1 }));
        assert!(contains(&MacroFormula::Gamma { cmp: CountOp::Lt, alpha: "bbb".into(), n: 1 }));
        // the length family is empty: no distance formula at all
        assert!(set
            .formulas()
            .all(|m| !matches!(m, MacroFormula::Dist { .. })));

        let set = phi_set(&s("bbaaaaaaaabb"), &s("bbaaaaaabb"), 4).unwrap();
        assert!(set.contains(&MacroFormula::Sigma { cmp: CountOp::Ge, alpha: "aaa".into(), n: 2 }));
        assert!(set.contains(&MacroFormula::Dist { cmp: DistOp::Ge, n: 10 }));
    });
}

#[test]
fn criterion_4_game_oracle_equivalence() {
    report(4, || {
        let started = Instant::now();
        let words = universe("ab", 1..=6);
        for u in &words {
            for v in &words {
                if u.symbols() == v.symbols() {
                    continue;
                }
                let e = efsim(u, v).unwrap();
                for r in 0..=e + 1 {
                    let fast = duplicator_wins(u, v, r);
                    let oracle = game_winner(u, v, r).unwrap() == GameResult::Duplicator;
                    assert_eq!(
                        fast,
                        oracle,
                        "solvers disagree on ({}, {}) at {r} rounds",
                        u.text(),
                        v.text()
                    );
                    // efsim is exactly the first round count the Spoiler wins
                    assert_eq!(oracle, r < e);
                }
            }
        }
        assert!(started.elapsed() < Duration::from_secs(600), "{:?}", started.elapsed());
    });
}

#[test]
fn criterion_5_distinguishability_lemmas() {
    report(5, || {
        let words = universe("ab", 1..=5);
        let env = Assignment::new();
        for u in &words {
            for v in &words {
                if u.symbols() == v.symbols() {
                    continue;
                }
                let e = efsim(u, v).unwrap();
                for r in 0..=3 {
                    let set = phi_set(u, v, r).unwrap();
                    for m in set.formulas() {
                        assert!(eval_macro(u, m), "{m:?} false on {}", u.text());
                        assert!(!eval_macro(v, m), "{m:?} true on {}", v.text());
                        let core = expand(m);
                        assert!(eval_core(u, &core, &env).unwrap());
                        assert!(!eval_core(v, &core, &env).unwrap());
                        assert!(e <= m.qr() && m.qr() <= r, "{m:?} rank out of range");
                    }
                    let spoiler_wins =
                        game_winner(u, v, r).unwrap() == GameResult::Spoiler;
                    assert_eq!(!set.is_empty(), spoiler_wins);
                }
            }
        }
    });
}

#[test]
fn criterion_6_quantifier_rank_closed_forms() {
    report(6, || {
        let mut leaves = Vec::new();
        for n in 1..=64 {
            for cmp in [DistOp::Le, DistOp::Lt, DistOp::Ge, DistOp::Gt, DistOp::Eq] {
                leaves.push(MacroFormula::Dist { cmp, n });
            }
        }
        for k in 1..=16u32 {
            let text: String = "ab".chars().cycle().take(k as usize).collect();
            for cmp in [EqOp::Eq, EqOp::Ne] {
                leaves.push(MacroFormula::Pref { cmp, k, s: text.clone() });
                leaves.push(MacroFormula::Suff { cmp, k, s: text.clone() });
            }
        }
        for q in 1..=3u32 {
            let alpha: String = "ab".chars().cycle().take((1 << q) - 1).collect();
            for n in 1..=4 {
                for cmp in [CountOp::Ge, CountOp::Lt, CountOp::Eq] {
                    leaves.push(MacroFormula::Gamma { cmp, alpha: alpha.clone(), n });
                    leaves.push(MacroFormula::Sigma { cmp, alpha: alpha.clone(), n });
                }
            }
        }
        for m in &leaves {
            m.validate().unwrap();
            assert_eq!(qr_core(&expand(m)), m.qr(), "rank mismatch on {m:?}");
        }
        assert_eq!(MacroFormula::Dist { cmp: DistOp::Le, n: 8 }.qr(), 3);
        assert_eq!(MacroFormula::Pref { cmp: EqOp::Eq, k: 4, s: "aaac".into() }.qr(), 2);
    });
}

#[test]
fn criterion_7_r_type_characterization() {
    report(7, || {
        let started = Instant::now();
        let lefts = universe("ab", 1..=5);
        let rights = universe("ab", 1..=7);
        for w in &lefts {
            for r in 0..=2 {
                let t = r_type(w, r, 4096).unwrap();
                for v in &rights {
                    let satisfied = eval_macro(v, &t);
                    let wins = game_winner(w, v, r).unwrap() == GameResult::Duplicator;
                    assert_eq!(
                        satisfied,
                        wins,
                        "type of {} at rank {r} misjudges {}",
                        w.text(),
                        v.text()
                    );
                }
            }
        }
        assert!(started.elapsed() < Duration::from_secs(600), "{:?}", started.elapsed());
    });
}

/// Independent minimum-disjunct oracle: direct search over covers of the
/// positives by subsets whose pooled maximal conjunction excludes every
/// negative, with no shared code with the production solver beyond the
/// formula pool itself.
fn brute_force_min_disjuncts(sample: &Sample) -> usize {
    let positives = sample.positives();
    let negatives = sample.negatives();
    let pool: Vec<MacroFormula> = efsynth::distinguish::phi_union(sample)
        .unwrap()
        .formulas()
        .cloned()
        .collect();
    let p = positives.len();
    let full: u32 = (1 << p) - 1;

    let coverable: Vec<bool> = (0..=full)
        .map(|g| {
            let members: Vec<_> = positives
                .iter()
                .enumerate()
                .filter(|(i, _)| g >> i & 1 == 1)
                .map(|(_, u)| u)
                .collect();
            let conj: Vec<_> = pool
                .iter()
                .filter(|f| members.iter().all(|u| eval_macro(u, f)))
                .collect();
            negatives.iter().all(|v| conj.iter().any(|f| !eval_macro(v, f)))
        })
        .collect();

    fn search(done: u32, full: u32, coverable: &[bool], depth: usize, best: &mut usize) {
        if depth >= *best {
            return;
        }
        if done == full {
            *best = depth;
            return;
        }
        let low = (!done & full).trailing_zeros();
        for g in 1..=full {
            if g >> low & 1 == 1 && g & done == 0 && coverable[g as usize] {
                search(done | g, full, coverable, depth + 1, best);
            }
        }
    }
    let mut best = p + 1;
    search(0, full, &coverable, 0, &mut best);
    assert!(best <= p, "per-positive cover always exists");
    best
}

#[test]
fn criterion_8_random_sample_properties() {
    report(8, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut produced = 0;
        while produced < 200 {
            let alphabet: &str = ["a", "ab", "abc"][rng.gen_range(0..3)];
            let word = |rng: &mut ChaCha8Rng| -> String {
                let len = rng.gen_range(1..=8);
                (0..len)
                    .map(|_| {
                        alphabet
                            .chars()
                            .nth(rng.gen_range(0..alphabet.len()))
                            .unwrap()
                    })
                    .collect()
            };
            let positives: Vec<String> =
                (0..rng.gen_range(1..=5)).map(|_| word(&mut rng)).collect();
            let negatives: Vec<String> = (0..rng.gen_range(1..=5))
                .map(|_| word(&mut rng))
                .filter(|t| !positives.contains(t))
                .collect();
            if negatives.is_empty() {
                continue;
            }
            let sample = Sample::new(&positives, &negatives, None).unwrap();
            produced += 1;

            let plain = synthesize(&sample).unwrap();
            assert!(
                consistent_both_ways(&sample, &plain.to_macro()),
                "inconsistent synthesis for P={positives:?} N={negatives:?}"
            );

            // rank minimality: the Duplicator survives r-1 rounds on the
            // pair that forced the rank
            let r = plain.rank;
            if r >= 1 {
                let (u, v) = sample
                    .positives()
                    .iter()
                    .flat_map(|u| sample.negatives().iter().map(move |v| (u, v)))
                    .max_by_key(|(u, v)| efsim(u, v).unwrap())
                    .unwrap();
                assert_eq!(efsim(u, v).unwrap(), r);
                match game_winner(u, v, r - 1) {
                    Ok(result) => assert_eq!(result, GameResult::Duplicator),
                    Err(efsynth::Error::Capacity(_)) => {}
                    Err(e) => panic!("oracle failed: {e}"),
                }
            }

            let minimized = synthesize_minimized(&sample, 16).unwrap();
            assert!(consistent_both_ways(&sample, &minimized.to_macro()));
            assert!(!minimized.greedy_fallback);
            assert_eq!(
                minimized.disjuncts.len(),
                brute_force_min_disjuncts(&sample),
                "disjunct count not minimal for P={positives:?} N={negatives:?}"
            );
        }
    });
}

#[test]
fn criterion_9_synthesis_throughput() {
    report(9, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
        let mut lines = String::new();
        for i in 0..40 {
            let head = if i < 20 { "+ a" } else { "- b" };
            let tail: String = (0..24)
                .map(|_| ['a', 'b', 'c'][rng.gen_range(0..3)])
                .collect();
            lines.push_str(&format!("{head}{tail}\n"));
        }
        let path = std::env::temp_dir()
            .join(format!("efsynth-accept-{}.sample", std::process::id()));
        std::fs::write(&path, &lines).unwrap();

        let started = Instant::now();
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_efsynth"))
            .args(["synth", path.to_str().unwrap(), "--minimize"])
            .output()
            .unwrap();
        let elapsed = started.elapsed();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(elapsed < Duration::from_secs(60), "{elapsed:?}");
    });
}
