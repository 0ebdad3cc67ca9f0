//! Subcommand runners. Each returns a single report plus the exit outcome;
//! input problems surface as `Err(String)` and exit 1. Verification fields
//! are recomputed by verifier operations, never copied from solver state.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde_json::json;

use addcomb_core::budget::Budget;
use addcomb_core::groups::GroupSpec;
use addcomb_core::latincube::{find_latin_transversal, perturbed_latin_cube, verify_transversal};
use addcomb_core::nullstellensatz::{certify, CnError};
use addcomb_core::orderings::{
    complete_to_zero_sum, find_ordering, find_ordering_even, klein_family_ordering_exists,
    verify_ordering, OrderingError, SolveOutcome, SubsetFamily,
};
use addcomb_core::permdet::identities::{
    check_duality_31, check_duality_32, check_lemma_21, check_symmetry_33, ExponentProfile,
    KTarget,
};
use addcomb_core::permdet::RingMatrix;
use addcomb_core::polyring::{parse_poly, CoefficientRing};
use addcomb_core::sumsets::{
    corollary51_sdr, theorem12_witness, theorem13_witness, theorem14_check, theorem51_sumset,
    verify_theorem12_witness, verify_theorem13_witness, FieldInstance, GroupInstance, SdrOutcome,
    SumsetError, SumsetParams, WitnessOutcome,
};

use crate::inputs::{
    cube_from_nested, cube_to_nested, parse_group_sets, pairs_to_map, read_json, read_text,
    value_sets_to_bigints, values_to_bigints, values_to_group_elements, CubeFile, GridFile,
    SetsFile, SumsetParamsFile,
};
use crate::report::{digest_inputs, Outcome, Report};
use crate::sampling::{distinct_residues, int_matrix, trial_rng};
use crate::sweeps::run_sweep;

/// Options shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Global {
    pub seed: Option<u64>,
    pub budget: Option<u64>,
}

impl Global {
    pub fn budget(&self) -> Budget {
        match self.budget {
            Some(cap) => Budget::limited(cap),
            None => Budget::unlimited(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

fn bigints_to_json(values: &[BigInt]) -> serde_json::Value {
    json!(values.iter().map(|v| v.to_string()).collect::<Vec<_>>())
}

pub fn find_ordering_cmd(
    global: &Global,
    group: Option<&str>,
    sets_path: Option<&Path>,
    even_last_odd_order: bool,
    fixture: Option<&str>,
) -> Result<(Report, Outcome), String> {
    if let Some(name) = fixture {
        if name != "klein" {
            return Err(format!("unknown fixture `{name}`; only `klein` is built in"));
        }
        // The four-group fixture: exhaustive over all 2^3 orderings.
        let exists = klein_family_ordering_exists(3);
        let digest = digest_inputs(&json!({"fixture": "klein", "m": 3}));
        let report = Report::new(
            "find-ordering",
            global.seed,
            global.budget,
            digest,
            json!({
                "fixture": "klein",
                "m": 3,
                "outcome": if exists { "solved" } else { "no-solution" },
            }),
            json!({"exhaustive": true, "orderings_checked": 8}),
        );
        let outcome = if exists { Outcome::Success } else { Outcome::Negative };
        return Ok((report, outcome));
    }

    let group = group.ok_or("`--group` is required (or use `--fixture klein`)")?;
    let sets_path = sets_path.ok_or("`--sets` is required")?;
    let spec: GroupSpec = group.parse().map_err(|e| format!("bad group spec: {e}"))?;
    let raw: SetsFile = read_json(sets_path)?;
    let sets = parse_group_sets(&spec, &raw)?;
    let fam = SubsetFamily::new(spec, sets).map_err(|e| e.to_string())?;
    let digest = digest_inputs(&json!({
        "group": group,
        "sets": raw,
        "even_last_odd_order": even_last_odd_order,
    }));

    let solve = if even_last_odd_order {
        find_ordering_even(&fam, &global.budget())
    } else {
        find_ordering(&fam, &global.budget())
    };
    match solve {
        Ok(SolveOutcome::Solved(sol)) => {
            let verified = verify_ordering(&sol, &fam).unwrap_or(false);
            let completion = complete_to_zero_sum(&sol, &spec)
                .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                .ok();
            let report = Report::new(
                "find-ordering",
                global.seed,
                global.budget,
                digest,
                json!({
                    "outcome": "solved",
                    "table": sol
                        .table
                        .iter()
                        .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "column_sums": sol
                        .column_sums
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>(),
                    "zero_sum_completion": completion,
                }),
                json!({"verified": verified}),
            );
            let outcome = if verified { Outcome::Success } else { Outcome::Negative };
            Ok((report, outcome))
        }
        Ok(SolveOutcome::NoSolution) => {
            let report = Report::new(
                "find-ordering",
                global.seed,
                global.budget,
                digest,
                json!({"outcome": "no-solution"}),
                json!({"exhaustive": true}),
            );
            Ok((report, Outcome::Negative))
        }
        Err(OrderingError::BudgetExceeded { nodes }) => {
            let report = Report::new(
                "find-ordering",
                global.seed,
                global.budget,
                digest,
                json!({"outcome": "budget-exhausted", "nodes": nodes}),
                json!({}),
            );
            Ok((report, Outcome::BudgetExhausted))
        }
        Err(e) => Err(e.to_string()),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn latin_cmd(
    global: &Global,
    side: Option<usize>,
    subcube: Option<&[PathBuf]>,
    cube_path: Option<&Path>,
    random_side: Option<usize>,
    trials: Option<u64>,
) -> Result<(Report, Outcome), String> {
    if let Some(n) = random_side {
        let trials = trials.unwrap_or(1);
        let mut results = Vec::new();
        let mut all_found = true;
        for trial in 0..trials {
            let cube_seed: u64 = trial_rng(global.seed(), trial).gen();
            let cube = perturbed_latin_cube(n, cube_seed);
            match find_latin_transversal(&cube, &global.budget()) {
                Ok(Some(t)) => {
                    let check = verify_transversal(&t, &cube).map_err(|e| e.to_string())?;
                    results.push(json!({
                        "trial": trial,
                        "cube_seed": cube_seed,
                        "found": true,
                        "cells": t.cells,
                        "values": t.values,
                        "verified": check.is_latin_transversal(),
                    }));
                    all_found &= check.is_latin_transversal();
                }
                Ok(None) => {
                    results.push(json!({
                        "trial": trial,
                        "cube_seed": cube_seed,
                        "found": false,
                        "note": "probe artifact: cube without a Latin transversal",
                    }));
                    all_found = false;
                }
                Err(addcomb_core::latincube::CubeError::BudgetExceeded { nodes }) => {
                    let digest = digest_inputs(&json!({"random_cube": n, "trials": trials}));
                    let report = Report::new(
                        "latin",
                        global.seed,
                        global.budget,
                        digest,
                        json!({"outcome": "budget-exhausted", "nodes": nodes, "trial": trial}),
                        json!({}),
                    );
                    return Ok((report, Outcome::BudgetExhausted));
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        let digest = digest_inputs(&json!({"random_cube": n, "trials": trials}));
        let report = Report::new(
            "latin",
            global.seed,
            global.budget,
            digest,
            json!({"trials": results}),
            json!({"all_found": all_found}),
        );
        let outcome = if all_found { Outcome::Success } else { Outcome::Negative };
        return Ok((report, outcome));
    }

    let (cube, description) = if let Some(path) = cube_path {
        let nested: CubeFile = read_json(path)?;
        (cube_from_nested(&nested)?, json!({"cube_file": path.display().to_string(), "cube": nested}))
    } else {
        let n = side.ok_or("one of `--N`, `--cube`, `--random-cube` is required")?;
        if n == 0 {
            return Err("side must be positive".into());
        }
        let cube = addcomb_core::latincube::Cube::cayley(n);
        match subcube {
            Some(paths) if paths.len() == 3 => {
                let a: Vec<usize> = read_json(&paths[0])?;
                let b: Vec<usize> = read_json(&paths[1])?;
                let c: Vec<usize> = read_json(&paths[2])?;
                let sub = cube.subcube(&a, &b, &c).map_err(|e| e.to_string())?;
                (sub, json!({"N": n, "subcube": [a, b, c]}))
            }
            Some(_) => return Err("`--subcube` takes exactly three index files".into()),
            None => (cube, json!({"N": n})),
        }
    };
    let digest = digest_inputs(&description);
    match find_latin_transversal(&cube, &global.budget()) {
        Ok(Some(t)) => {
            let check = verify_transversal(&t, &cube).map_err(|e| e.to_string())?;
            let report = Report::new(
                "latin",
                global.seed,
                global.budget,
                digest,
                json!({
                    "outcome": "found",
                    "cells": t.cells,
                    "values": t.values,
                    "cube": cube_to_nested(&cube),
                }),
                json!({
                    "cells_disjoint": check.cells_disjoint,
                    "values_distinct": check.values_distinct,
                    "latin_transversal": check.is_latin_transversal(),
                }),
            );
            let outcome = if check.is_latin_transversal() {
                Outcome::Success
            } else {
                Outcome::Negative
            };
            Ok((report, outcome))
        }
        Ok(None) => {
            let report = Report::new(
                "latin",
                global.seed,
                global.budget,
                digest,
                json!({"outcome": "not-found", "cube": cube_to_nested(&cube)}),
                json!({"exhaustive": true}),
            );
            Ok((report, Outcome::Negative))
        }
        Err(addcomb_core::latincube::CubeError::BudgetExceeded { nodes }) => {
            let report = Report::new(
                "latin",
                global.seed,
                global.budget,
                digest,
                json!({"outcome": "budget-exhausted", "nodes": nodes}),
                json!({}),
            );
            Ok((report, Outcome::BudgetExhausted))
        }
        Err(e) => Err(e.to_string()),
    }
}

pub fn check_identity_cmd(
    global: &Global,
    which: &str,
    n: usize,
    trials: u64,
) -> Result<(Report, Outcome), String> {
    if n == 0 || n > 4 {
        return Err("`--n` must be between 1 and 4".into());
    }
    let seed = global.seed();
    let mut reports = Vec::new();
    let mut all_equal = true;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let entry = match which {
            "2.1" => {
                let m_rows = *[2usize, 3, 5]
                    .get(rng.gen_range(0..3))
                    .expect("fixed list");
                let rows: Vec<Vec<BigInt>> = (0..m_rows)
                    .map(|_| {
                        (0..n).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect()
                    })
                    .collect();
                let report = check_lemma_21(&rows).map_err(|e| e.to_string())?;
                all_equal &= report.equal;
                json!({
                    "trial": trial,
                    "rows": rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "even_variant": report.even_variant,
                    "lhs": report.lhs.to_string(),
                    "rhs": report.rhs.to_string(),
                    "equal": report.equal,
                })
            }
            "3.1" | "3.2" => {
                let a = RingMatrix::from_rows(int_matrix(&mut rng, n, -9, 9))
                    .map_err(|e| e.to_string())?;
                let delta = rng.gen_range(0..=1u8);
                let prof = if trial % 2 == 0 {
                    let mut m_vec = Vec::with_capacity(n);
                    let mut current = rng.gen_range(0..=1u32);
                    for _ in 0..n {
                        m_vec.push(current);
                        current += if delta == 1 {
                            rng.gen_range(1..=2)
                        } else {
                            rng.gen_range(0..=2)
                        };
                    }
                    let k = m_vec.iter().copied().max().unwrap_or(0) + rng.gen_range(0..=1);
                    ExponentProfile::new(KTarget::Uniform(k), m_vec, delta)
                } else {
                    let m_vec: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                    let forced: u32 = m_vec.iter().sum::<u32>()
                        + if delta == 1 { (n * (n - 1) / 2) as u32 } else { 0 };
                    let mut k = vec![0u32; n];
                    for _ in 0..forced + rng.gen_range(0..=2) {
                        k[rng.gen_range(0..n)] += 1;
                    }
                    ExponentProfile::new(KTarget::PerVariable(k), m_vec, delta)
                };
                let report = if which == "3.1" {
                    check_duality_31(&a, &prof)
                } else {
                    check_duality_32(&a, &prof)
                }
                .map_err(|e| e.to_string())?;
                all_equal &= report.equal;
                json!({
                    "trial": trial,
                    "profile": format!("{prof:?}"),
                    "lhs": report.lhs.to_string(),
                    "rhs_sigma": report.rhs_sigma.to_string(),
                    "rhs_closed": report.rhs_closed.as_ref().map(|v| v.to_string()),
                    "equal": report.equal,
                })
            }
            "3.3" => {
                let a = RingMatrix::from_rows(int_matrix(&mut rng, n, -9, 9))
                    .map_err(|e| e.to_string())?;
                let l_vec: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                let m_vec: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                let forced: u64 = l_vec.iter().chain(m_vec.iter()).map(|&v| v as u64).sum();
                let k = forced.div_ceil(n as u64) as u32 + rng.gen_range(0..=1);
                let report = check_symmetry_33(&a, k, &l_vec, &m_vec)
                    .map_err(|e| e.to_string())?;
                all_equal &= report.all_equal;
                json!({
                    "trial": trial,
                    "k": k,
                    "l": l_vec,
                    "m": m_vec,
                    "sides": report
                        .sides
                        .iter()
                        .map(|(lhs, rhs)| json!([lhs.to_string(), rhs.to_string()]))
                        .collect::<Vec<_>>(),
                    "flags": report.flags,
                    "equal": report.all_equal,
                })
            }
            other => {
                return Err(format!(
                    "unknown identity `{other}`; expected one of 2.1, 3.1, 3.2, 3.3"
                ))
            }
        };
        reports.push(entry);
    }
    let digest = digest_inputs(&json!({"which": which, "n": n, "trials": trials, "seed": seed}));
    let report = Report::new(
        "check-identity",
        global.seed,
        global.budget,
        digest,
        json!({"trials": reports}),
        json!({"all_equal": all_equal}),
    );
    let outcome = if all_equal { Outcome::Success } else { Outcome::Negative };
    Ok((report, outcome))
}

pub fn cn_witness_cmd(
    global: &Global,
    poly_path: &Path,
    grid_path: &Path,
) -> Result<(Report, Outcome), String> {
    let grid_file: GridFile = read_json(grid_path)?;
    let (ring, grid) = grid_file.to_grid()?;
    let poly_text = read_text(poly_path)?;
    let f = parse_poly(poly_text.trim(), ring, grid.sets().len()).map_err(|e| e.to_string())?;
    let digest = digest_inputs(&json!({"poly": poly_text.trim(), "grid": grid_file}));
    match certify(&f, &grid) {
        Ok(cert) => {
            let verification = match &cert.witness {
                Some(witness) => {
                    let value = f.evaluate(witness).map_err(|e| e.to_string())?;
                    let member = witness
                        .iter()
                        .enumerate()
                        .all(|(i, v)| grid.sets()[i].contains(v));
                    json!({
                        "witness_in_grid": member,
                        "witness_value_nonzero": !ring.is_zero(&value),
                    })
                }
                None => json!({"witness_in_grid": null, "witness_value_nonzero": null}),
            };
            let has_witness = cert.witness.is_some();
            let report = Report::new(
                "cn-witness",
                global.seed,
                global.budget,
                digest,
                json!({
                    "coefficient": cert.coefficient.to_string(),
                    "degree_matches": cert.degree_matches,
                    "witness": cert.witness.as_ref().map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                }),
                verification,
            );
            let outcome = if has_witness { Outcome::Success } else { Outcome::Negative };
            Ok((report, outcome))
        }
        Err(CnError::BudgetExceeded { evaluations }) => {
            let report = Report::new(
                "cn-witness",
                global.seed,
                global.budget,
                digest,
                json!({"outcome": "budget-exhausted", "evaluations": evaluations}),
                json!({}),
            );
            Ok((report, Outcome::BudgetExhausted))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn generated_or_given_sets(
    given: &Option<Vec<Vec<serde_json::Value>>>,
    rng: &mut rand_chacha::ChaCha8Rng,
    p: u64,
    count: usize,
    size: usize,
) -> Result<Vec<Vec<BigInt>>, String> {
    match given {
        Some(sets) => value_sets_to_bigints(sets),
        None => Ok((0..count).map(|_| distinct_residues(rng, p, size)).collect()),
    }
}

pub fn sumset_cmd(
    global: &Global,
    theorem: &str,
    params_path: &Path,
    field: Option<u64>,
) -> Result<(Report, Outcome), String> {
    let file: SumsetParamsFile = read_json(params_path)?;
    let digest = digest_inputs(&json!({
        "theorem": theorem,
        "params": file,
        "field": field,
        "seed": global.seed(),
    }));
    let budget = global.budget();
    let mut rng = trial_rng(global.seed(), 0);

    let need = |name: &str, value: Option<u32>| -> Result<u32, String> {
        value.ok_or_else(|| format!("params file must set `{name}` for theorem {theorem}"))
    };
    let need_n = || -> Result<usize, String> {
        file.n
            .ok_or_else(|| format!("params file must set `n` for theorem {theorem}"))
    };
    let need_field = || -> Result<CoefficientRing, String> {
        let p = field.ok_or("`--field` is required for field-side theorems")?;
        CoefficientRing::mod_p(p).map_err(|e| e.to_string())
    };

    let (result, verification, outcome) = match theorem {
        "1.2" => {
            let params = SumsetParams::new(
                need("h", file.h)?,
                need("k", file.k)?,
                need("l", file.l)?,
                need("m", file.m)?,
                need_n()?,
            )
            .map_err(|e| e.to_string())?;
            let ring = need_field()?;
            let p = ring.characteristic();
            let n = params.n();
            let default_poly = |degree: u32| -> Vec<Vec<i64>> {
                let mut coeffs = vec![0i64; degree as usize];
                coeffs.push(1);
                vec![coeffs; n]
            };
            let inst = FieldInstance {
                field: ring,
                a_sets: generated_or_given_sets(&file.a_sets, &mut rng, p, n, params.k() as usize)?,
                b_sets: generated_or_given_sets(&file.b_sets, &mut rng, p, n, params.l() as usize)?,
                c: match &file.c {
                    Some(values) => values_to_bigints(values)?,
                    None => distinct_residues(&mut rng, p, n),
                },
                p_polys: file
                    .p_polys
                    .clone()
                    .unwrap_or_else(|| default_poly(params.m()))
                    .iter()
                    .map(|cs| cs.iter().map(|&v| BigInt::from(v)).collect())
                    .collect(),
                q_polys: file
                    .q_polys
                    .clone()
                    .unwrap_or_else(|| default_poly(params.h()))
                    .iter()
                    .map(|cs| cs.iter().map(|&v| BigInt::from(v)).collect())
                    .collect(),
                s_excluded: match &file.s_excluded {
                    Some(values) => values_to_bigints(values)?,
                    None => Vec::new(),
                },
                t_excluded: match &file.t_excluded {
                    Some(values) => values_to_bigints(values)?,
                    None => Vec::new(),
                },
            };
            match theorem12_witness(&inst, &params, &budget) {
                Ok(WitnessOutcome::Witness { a, b }) => {
                    let violations = verify_theorem12_witness(&inst, &params, &a, &b)
                        .map_err(|e| e.to_string())?;
                    let ok = violations.is_empty();
                    (
                        json!({
                            "outcome": "witness",
                            "a": bigints_to_json(&a),
                            "b": bigints_to_json(&b),
                            "instance": format!("{inst:?}"),
                        }),
                        json!({"violations": violations, "valid": ok}),
                        if ok { Outcome::Success } else { Outcome::Negative },
                    )
                }
                Ok(WitnessOutcome::Inconsistent) => (
                    json!({"outcome": "inconsistent"}),
                    json!({"note": "guaranteed witness missing after exhaustive search"}),
                    Outcome::Negative,
                ),
                Err(SumsetError::BudgetExceeded { nodes }) => (
                    json!({"outcome": "budget-exhausted", "nodes": nodes}),
                    json!({}),
                    Outcome::BudgetExhausted,
                ),
                Err(e) => return Err(e.to_string()),
            }
        }
        "1.3" => {
            let params = SumsetParams::new(
                need("h", file.h)?,
                need("k", file.k)?,
                need("l", file.l)?,
                need("m", file.m)?,
                need_n()?,
            )
            .map_err(|e| e.to_string())?;
            let spec: GroupSpec = file
                .group
                .as_deref()
                .ok_or("params file must set `group` for theorem 1.3")?
                .parse()
                .map_err(|e| format!("bad group spec: {e}"))?;
            let parse_family = |sets: &Option<Vec<Vec<serde_json::Value>>>,
                                name: &str|
             -> Result<Vec<Vec<_>>, String> {
                sets.as_ref()
                    .ok_or_else(|| format!("params file must set `{name}` for theorem 1.3"))?
                    .iter()
                    .map(|s| values_to_group_elements(s, &spec))
                    .collect()
            };
            let inst = GroupInstance {
                spec,
                a_sets: parse_family(&file.a_sets, "a_sets")?,
                b_sets: parse_family(&file.b_sets, "b_sets")?,
                c: values_to_group_elements(
                    file.c.as_ref().ok_or("params file must set `c`")?,
                    &spec,
                )?,
                s_excluded: match &file.s_excluded {
                    Some(values) => values
                        .iter()
                        .map(|member| {
                            let list = member
                                .as_array()
                                .ok_or("s_excluded members must be arrays")?;
                            values_to_group_elements(list, &spec)
                        })
                        .collect::<Result<_, String>>()?,
                    None => Vec::new(),
                },
                t_excluded: match &file.t_excluded {
                    Some(values) => values
                        .iter()
                        .map(|member| {
                            let list = member
                                .as_array()
                                .ok_or("t_excluded members must be arrays")?;
                            values_to_group_elements(list, &spec)
                        })
                        .collect::<Result<_, String>>()?,
                    None => Vec::new(),
                },
            };
            match theorem13_witness(&inst, &params, &budget) {
                Ok(WitnessOutcome::Witness { a, b }) => {
                    let violations = verify_theorem13_witness(&inst, &params, &a, &b)
                        .map_err(|e| e.to_string())?;
                    let ok = violations.is_empty();
                    (
                        json!({
                            "outcome": "witness",
                            "a": a.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                            "b": b.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                        }),
                        json!({"violations": violations, "valid": ok}),
                        if ok { Outcome::Success } else { Outcome::Negative },
                    )
                }
                Ok(WitnessOutcome::Inconsistent) => (
                    json!({"outcome": "inconsistent"}),
                    json!({"note": "guaranteed witness missing after exhaustive search"}),
                    Outcome::Negative,
                ),
                Err(SumsetError::BudgetExceeded { nodes }) => (
                    json!({"outcome": "budget-exhausted", "nodes": nodes}),
                    json!({}),
                    Outcome::BudgetExhausted,
                ),
                Err(e) => return Err(e.to_string()),
            }
        }
        "1.4" => {
            let ring = need_field()?;
            let p = ring.characteristic();
            let n = need_n()?;
            let m = need("m", file.m)?;
            let k = need("k", file.k)? as usize;
            let a_sets = generated_or_given_sets(&file.a_sets, &mut rng, p, n, k)?;
            let b_sets = generated_or_given_sets(&file.b_sets, &mut rng, p, n, n)?;
            let c = match &file.c {
                Some(values) => values_to_bigints(values)?,
                None => distinct_residues(&mut rng, p, n),
            };
            let pairs = file
                .s_pairs
                .as_ref()
                .map(|entries| pairs_to_map(entries))
                .unwrap_or_default();
            match theorem14_check(&a_sets, &b_sets, &c, &pairs, m, &ring, &budget) {
                Ok(report) => {
                    let bound_met = report.bound_met;
                    (
                        json!({
                            "sdr_b": bigints_to_json(&report.sdr_b),
                            "sumset": bigints_to_json(&report.sumset),
                            "cardinality": report.cardinality,
                            "bound": report.bound,
                        }),
                        json!({"bound_met": bound_met}),
                        if bound_met { Outcome::Success } else { Outcome::Negative },
                    )
                }
                Err(SumsetError::BudgetExceeded { nodes }) => (
                    json!({"outcome": "budget-exhausted", "nodes": nodes}),
                    json!({}),
                    Outcome::BudgetExhausted,
                ),
                Err(e) => return Err(e.to_string()),
            }
        }
        "5.1" => {
            let ring = need_field()?;
            let p = ring.characteristic();
            let n = need_n()?;
            let m = need("m", file.m)?;
            let k = need("k", file.k)? as usize;
            let a_sets = generated_or_given_sets(&file.a_sets, &mut rng, p, n, k)?;
            let p_polys: Vec<Vec<BigInt>> = match &file.p_polys {
                Some(polys) => polys
                    .iter()
                    .map(|cs| cs.iter().map(|&v| BigInt::from(v)).collect())
                    .collect(),
                None => {
                    let leading = distinct_residues(&mut rng, p, n);
                    leading
                        .into_iter()
                        .map(|b| {
                            let mut coeffs: Vec<BigInt> = (0..m)
                                .map(|_| BigInt::from(rng.gen_range(0..p)))
                                .collect();
                            coeffs.push(b);
                            coeffs
                        })
                        .collect()
                }
            };
            match theorem51_sumset(&a_sets, &p_polys, m, &ring, &budget) {
                Ok(report) => {
                    let bound_met = report.bound_met;
                    (
                        json!({
                            "sumset": bigints_to_json(&report.sumset),
                            "cardinality": report.cardinality,
                            "bound": report.bound,
                            "admissible_tuples": report.admissible_tuples,
                        }),
                        json!({"bound_met": bound_met}),
                        if bound_met { Outcome::Success } else { Outcome::Negative },
                    )
                }
                Err(SumsetError::BudgetExceeded { nodes }) => (
                    json!({"outcome": "budget-exhausted", "nodes": nodes}),
                    json!({}),
                    Outcome::BudgetExhausted,
                ),
                Err(e) => return Err(e.to_string()),
            }
        }
        "c5.1" => {
            let ring = need_field()?;
            let p = ring.characteristic();
            let b: Vec<BigInt> = match &file.b {
                Some(values) => values.iter().map(|&v| BigInt::from(v)).collect(),
                None => {
                    let n = need_n()?;
                    distinct_residues(&mut rng, p, n)
                }
            };
            let n = b.len();
            let a_sets = generated_or_given_sets(&file.a_sets, &mut rng, p, n, n)?;
            match corollary51_sdr(&a_sets, &b, &ring, &budget) {
                Ok(SdrOutcome::Found(a)) => {
                    // Independent recheck of the permanent condition.
                    let paired: Vec<BigInt> =
                        (0..n).map(|i| ring.mul(&a[i], &b[i])).collect();
                    let mut rows = Vec::with_capacity(n);
                    let mut current = vec![BigInt::from(1); n];
                    for _ in 0..n {
                        rows.push(current.clone());
                        for (slot, base) in current.iter_mut().zip(&paired) {
                            *slot = ring.mul(slot, base);
                        }
                    }
                    let per = ring.normalize(
                        RingMatrix::from_rows(rows).map_err(|e| e.to_string())?.permanent(),
                    );
                    let ok = !per.is_zero();
                    (
                        json!({
                            "outcome": "found",
                            "sdr": bigints_to_json(&a),
                            "permanent": per.to_string(),
                        }),
                        json!({"permanent_nonzero": ok}),
                        if ok { Outcome::Success } else { Outcome::Negative },
                    )
                }
                Ok(SdrOutcome::Inconsistent) => (
                    json!({"outcome": "inconsistent"}),
                    json!({"note": "guaranteed representative system missing"}),
                    Outcome::Negative,
                ),
                Err(SumsetError::BudgetExceeded { nodes }) => (
                    json!({"outcome": "budget-exhausted", "nodes": nodes}),
                    json!({}),
                    Outcome::BudgetExhausted,
                ),
                Err(e) => return Err(e.to_string()),
            }
        }
        other => {
            return Err(format!(
                "unknown theorem `{other}`; expected one of 1.2, 1.3, 1.4, 5.1, c5.1"
            ))
        }
    };
    let report = Report::new("sumset", global.seed, global.budget, digest, result, verification);
    Ok((report, outcome))
}

pub fn sweep_cmd(
    global: &Global,
    name: &str,
    n: Option<usize>,
    trials: Option<u64>,
) -> Result<(Report, Outcome), String> {
    let outcome = run_sweep(name, n, trials, global.seed())?;
    let digest = digest_inputs(&json!({
        "sweep": name,
        "n": n,
        "trials": trials,
        "seed": global.seed(),
    }));
    let passed = outcome.passed();
    let report = Report::new(
        "sweep",
        global.seed,
        global.budget,
        digest,
        outcome.to_json(),
        json!({"passed": passed}),
    );
    let exit = if passed { Outcome::Success } else { Outcome::Negative };
    Ok((report, exit))
}
