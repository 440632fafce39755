//! Command implementations. Every command verifies what it builds, writes a
//! certificate, and prints a one-line summary to stdout.

use crate::certificate::{write_certificate, CertificateBuilder};
use crate::{BellCmd, Cli, Command, DesignCmd, GameCmd, GhKind, HadamardCmd, KsetCmd, Outcome};
use anyhow::{anyhow, bail, Context, Result};
use num_rational::BigRational;
use serde_json::{json, Value};
use star_ks_core::bell;
use star_ks_core::designs;
use star_ks_core::games::{self, BKSPair, BksOutcome, QuantumValue, Variant};
use star_ks_core::hadamard::{
    gh_kronecker, gh_mult_table, gh_to_shadamard, jungnickel_gh, normalize_shadamard,
    smallest_non_residue, verify_gh, verify_shadamard, GHMatrix, SHadamard,
};
use star_ks_core::ksets::{
    self, faithfulness_check, golden, ks_assignment_search, lisonek_construct,
    orthogonality_graph, parity_check, verify_bases, KsFile, Pair, SearchBudget, SearchOutcome,
};
use star_ks_core::report::VerificationReport;
use std::path::{Path, PathBuf};

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Hadamard { cmd } => hadamard(cli, cmd),
        Command::Kset { cmd } => kset(cli, cmd),
        Command::Design { cmd } => design(cli, cmd),
        Command::Game { cmd } => game(cli, cmd),
        Command::Bell { cmd } => bell_cmd(cli, cmd),
        Command::Pipeline { name } => crate::pipelines::run(cli, *name),
    }
}

pub fn rational_str(r: &BigRational) -> String {
    if r.denom() == &num_bigint::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn report_json(report: &VerificationReport) -> Value {
    json!({
        "subject": report.subject,
        "pass": report.is_pass(),
        "violations": report.violations.iter().map(|v| json!({
            "what": v.what,
            "items": v.items,
        })).collect::<Vec<_>>(),
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<(T, Vec<u8>)> {
    let bytes =
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let value: T = serde_json::from_slice(&bytes)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok((value, bytes))
}

/// Either a GH matrix or an S-Hadamard matrix on disk, discriminated by a
/// `kind` tag.
#[derive(serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixFile {
    Gh {
        group_order: u32,
        lambda: u32,
        rows: Vec<Vec<u32>>,
    },
    Shadamard {
        root_order: u32,
        rows: Vec<Vec<u32>>,
        normalized: bool,
    },
}

impl MatrixFile {
    pub fn from_gh(m: &GHMatrix) -> Self {
        MatrixFile::Gh {
            group_order: m.group_order,
            lambda: m.lam,
            rows: m.rows.clone(),
        }
    }

    pub fn from_shadamard(s: &SHadamard) -> Self {
        MatrixFile::Shadamard {
            root_order: s.root_order,
            rows: s.rows.clone(),
            normalized: s.normalized,
        }
    }

    pub fn into_gh(self) -> Result<GHMatrix> {
        match self {
            MatrixFile::Gh {
                group_order, rows, ..
            } => Ok(GHMatrix::from_rows(group_order, rows)?),
            MatrixFile::Shadamard { .. } => bail!("expected a GH matrix, found an S-Hadamard one"),
        }
    }
}

pub fn write_json(out_dir: &Path, name: &str, value: &impl serde::Serialize) -> Result<PathBuf> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value)?)?;
    Ok(path)
}

pub fn load_kset(path: &Path) -> Result<(ksets::KSSet, Vec<u8>)> {
    let (file, bytes) = read_json::<KsFile>(path)?;
    let k: ksets::KSSet = file
        .try_into()
        .map_err(|e| anyhow!("invalid KS set in {}: {e}", path.display()))?;
    Ok((k, bytes))
}

pub fn search_budget(cli: &Cli) -> SearchBudget {
    SearchBudget {
        max_seconds: cli.budget_seconds,
        ..SearchBudget::default()
    }
}

fn hadamard(cli: &Cli, cmd: &HadamardCmd) -> Result<Outcome> {
    match cmd {
        HadamardCmd::Build {
            kind,
            q,
            c,
            left,
            right,
            out,
        } => {
            let mut cert = CertificateBuilder::new("gh");
            let (m, default_name) = match kind {
                GhKind::Jungnickel => {
                    let q = q.ok_or_else(|| anyhow!("--q is required for jungnickel"))?;
                    let c = c.unwrap_or_else(|| smallest_non_residue(q));
                    cert.input_param("q", q);
                    cert.input_param("c", c);
                    (jungnickel_gh(q, c)?, format!("gh-jungnickel-{q}.json"))
                }
                GhKind::MultTable => {
                    let q = q.ok_or_else(|| anyhow!("--q is required for mult-table"))?;
                    cert.input_param("q", q);
                    (gh_mult_table(q)?, format!("gh-mult-{q}.json"))
                }
                GhKind::Kronecker => {
                    let left = left.as_ref().ok_or_else(|| anyhow!("--left required"))?;
                    let right = right.as_ref().ok_or_else(|| anyhow!("--right required"))?;
                    let (a, abytes) = read_json::<MatrixFile>(left)?;
                    let (b, bbytes) = read_json::<MatrixFile>(right)?;
                    cert.input_bytes("left", &abytes);
                    cert.input_bytes("right", &bbytes);
                    (
                        gh_kronecker(&a.into_gh()?, &b.into_gh()?)?,
                        "gh-kronecker.json".to_string(),
                    )
                }
            };
            let report = verify_gh(&m);
            let name = out.clone().unwrap_or(default_name);
            write_json(&cli.out_dir, &name, &MatrixFile::from_gh(&m))?;
            let payload = json!({
                "matrix_file": name,
                "group_order": m.group_order,
                "lambda": m.lam,
                "side": m.side(),
                "verification": report_json(&report),
            });
            let cert = cert.finish(payload);
            write_certificate(&cli.out_dir, &format!("{name}.cert.json"), &cert)?;
            println!(
                "GH({},{}) of side {}: {}",
                m.group_order,
                m.lam,
                m.side(),
                if report.is_pass() { "pass" } else { "FAIL" }
            );
            Ok(if report.is_pass() { Outcome::Pass } else { Outcome::Fail })
        }
        HadamardCmd::Verify { file } => {
            let (matrix, bytes) = read_json::<MatrixFile>(file)?;
            let mut cert = CertificateBuilder::new("gh");
            cert.input_bytes("matrix", &bytes);
            let report = match matrix {
                MatrixFile::Gh {
                    group_order, rows, ..
                } => verify_gh(&GHMatrix::from_rows(group_order, rows)?),
                MatrixFile::Shadamard {
                    root_order,
                    rows,
                    normalized,
                } => verify_shadamard(&SHadamard {
                    root_order,
                    rows,
                    normalized,
                }),
            };
            println!("{report}");
            let pass = report.is_pass();
            let cert = cert.finish(json!({ "verification": report_json(&report) }));
            write_certificate(&cli.out_dir, "hadamard-verify.cert.json", &cert)?;
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        HadamardCmd::Convert {
            file,
            out,
            normalize,
        } => {
            let (matrix, bytes) = read_json::<MatrixFile>(file)?;
            let mut cert = CertificateBuilder::new("shadamard");
            cert.input_bytes("matrix", &bytes);
            let gh = matrix.into_gh()?;
            let mut s = gh_to_shadamard(&gh)?;
            if *normalize {
                s = normalize_shadamard(&s);
            }
            let report = verify_shadamard(&s);
            let name = out.clone().unwrap_or_else(|| "shadamard.json".to_string());
            write_json(&cli.out_dir, &name, &MatrixFile::from_shadamard(&s))?;
            let cert = cert.finish(json!({
                "matrix_file": name,
                "order": s.order(),
                "root_order": s.root_order,
                "normalized": s.normalized,
                "verification": report_json(&report),
            }));
            write_certificate(&cli.out_dir, &format!("{name}.cert.json"), &cert)?;
            println!(
                "S-Hadamard of order {} over Z[zeta_{}]: {}",
                s.order(),
                s.root_order,
                if report.is_pass() { "pass" } else { "FAIL" }
            );
            Ok(if report.is_pass() { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

/// Build the family KS set for J(N,2) and the underlying S-Hadamard input
/// when one exists.
pub fn build_kset_for_n(n: u16, c: Option<u32>) -> Result<ksets::KSSet> {
    if n == 9 {
        return Ok(designs::factor_embed(
            &[designs::ceg18_on_factor(0), designs::ceg18_on_factor(1)],
            &designs::k9_paley_factorization(),
        )?);
    }
    if n < 5 || n % 2 == 0 {
        bail!("N must be odd and >= 5, got {n}");
    }
    let half = (n - 1) / 2;
    let q = half as u32;
    let c = c.unwrap_or_else(|| smallest_non_residue(q));
    let gh = jungnickel_gh(q, c)
        .map_err(|e| anyhow!("no built-in route to J({n},2): {e}"))?;
    Ok(lisonek_construct(&gh_to_shadamard(&gh)?)?)
}

fn kset(cli: &Cli, cmd: &KsetCmd) -> Result<Outcome> {
    match cmd {
        KsetCmd::Build {
            n,
            c,
            from_shadamard,
            out,
        } => {
            let mut cert = CertificateBuilder::new("kset");
            let (k, default_name) = if let Some(path) = from_shadamard {
                let (matrix, bytes) = read_json::<MatrixFile>(path)?;
                cert.input_bytes("shadamard", &bytes);
                let MatrixFile::Shadamard {
                    root_order,
                    rows,
                    normalized,
                } = matrix
                else {
                    bail!("--from-shadamard expects an S-Hadamard file");
                };
                let s = SHadamard {
                    root_order,
                    rows,
                    normalized,
                };
                let k = lisonek_construct(&s)?;
                let name = format!("kset-n{}.json", k.n_lines);
                (k, name)
            } else {
                let n = n.ok_or_else(|| anyhow!("--n or --from-shadamard is required"))?;
                cert.input_param("n", n);
                if let Some(c) = c {
                    cert.input_param("c", c);
                }
                (build_kset_for_n(n, *c)?, format!("kset-n{n}.json"))
            };
            let bases = verify_bases(&k);
            let parity = parity_check(&k);
            let name = out.clone().unwrap_or(default_name);
            write_json(&cli.out_dir, &name, &KsFile::from(&k))?;
            let pass = bases.is_pass() && parity;
            let cert = cert.finish(json!({
                "kset_file": name,
                "n_lines": k.n_lines,
                "dim": k.dim,
                "root_order": k.root_order,
                "n_vectors": k.vectors.len(),
                "bases": report_json(&bases),
                "parity_certificate": parity,
            }));
            write_certificate(&cli.out_dir, &format!("{name}.cert.json"), &cert)?;
            println!(
                "KS set for J({},2): {} vectors, dim {}, bases {}, parity {}",
                k.n_lines,
                k.vectors.len(),
                k.dim,
                if bases.is_pass() { "pass" } else { "FAIL" },
                parity
            );
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        KsetCmd::Verify {
            file,
            search,
            full_orthogonality,
        } => {
            let (k, bytes) = load_kset(file)?;
            let mut cert = CertificateBuilder::new("kset");
            cert.input_bytes("kset", &bytes);
            let bases = verify_bases(&k);
            let parity = parity_check(&k);
            println!("{bases}");
            println!("parity certificate: {parity}");
            let mut outcome = if bases.is_pass() && parity {
                Outcome::Pass
            } else {
                Outcome::Fail
            };
            let mut search_json = Value::Null;
            if *search {
                match ks_assignment_search(&k, *full_orthogonality, search_budget(cli)) {
                    SearchOutcome::ProofOfNone { nodes } => {
                        println!("assignment search: none (proof, {nodes} nodes)");
                        search_json = json!({ "result": "none", "nodes": nodes });
                    }
                    SearchOutcome::Assignment(ones) => {
                        println!("assignment search: FOUND ({} ones) — not a KS set", ones.len());
                        search_json = json!({
                            "result": "assignment",
                            "ones": ones.iter().map(|p| [p.small(), p.large()]).collect::<Vec<_>>(),
                        });
                        outcome = Outcome::Fail;
                    }
                    SearchOutcome::Indeterminate { nodes } => {
                        println!("assignment search: indeterminate after {nodes} nodes");
                        search_json = json!({ "result": "indeterminate", "nodes": nodes });
                        if outcome == Outcome::Pass {
                            outcome = Outcome::Indeterminate;
                        }
                    }
                }
            }
            let cert = cert.finish(json!({
                "bases": report_json(&bases),
                "parity_certificate": parity,
                "search": search_json,
            }));
            write_certificate(&cli.out_dir, "kset-verify.cert.json", &cert)?;
            Ok(outcome)
        }
        KsetCmd::Graph { file, out } => {
            let (k, bytes) = load_kset(file)?;
            let mut cert = CertificateBuilder::new("kset");
            cert.input_bytes("kset", &bytes);
            let g = orthogonality_graph(&k);
            let extras = faithfulness_check(&k);
            let name = out.clone().unwrap_or_else(|| "orthogonality-graph.json".into());
            let graph_json = json!({
                "n_vertices": g.n_vertices(),
                "labels": g.labels.iter().map(|p| [p.small(), p.large()]).collect::<Vec<_>>(),
                "edges": g.edges.iter().collect::<Vec<_>>(),
                "extra_orthogonal_pairs": extras.iter().map(|(p, q)| {
                    [[p.small(), p.large()], [q.small(), q.large()]]
                }).collect::<Vec<_>>(),
                "faithful": extras.is_empty(),
            });
            write_json(&cli.out_dir, &name, &graph_json)?;
            let cert = cert.finish(graph_json);
            write_certificate(&cli.out_dir, &format!("{name}.cert.json"), &cert)?;
            println!(
                "orthogonality graph: {} vertices, {} edges, faithful: {}",
                g.n_vertices(),
                g.edges.len(),
                extras.is_empty()
            );
            Ok(Outcome::Pass)
        }
        KsetCmd::Export { n, out } => {
            let k = match n {
                7 => golden::table_j7(),
                9 => golden::table_j9(),
                11 => golden::table_j11(),
                _ => bail!("golden data exists for N = 7, 9, 11"),
            };
            let name = out.clone().unwrap_or(format!("kset-n{n}-golden.json"));
            write_json(&cli.out_dir, &name, &KsFile::from(&k))?;
            println!("wrote {name}");
            Ok(Outcome::Pass)
        }
    }
}

fn design(cli: &Cli, cmd: &DesignCmd) -> Result<Outcome> {
    match cmd {
        DesignCmd::Ag2 { k, out } => {
            let mut cert = CertificateBuilder::new("kset");
            cert.input_param("k", k);
            let d = designs::ag2_rbibd(*k)?;
            let report = designs::verify_rbibd(&d);
            let name = out.clone().unwrap_or(format!("rbibd-ag2-{k}.json"));
            write_json(&cli.out_dir, &name, &d)?;
            let cert = cert.finish(json!({
                "rbibd_file": name,
                "v": d.v, "b": d.b, "r": d.r, "k": d.k, "lambda": d.lam,
                "classes": d.resolution.len(),
                "verification": report_json(&report),
            }));
            write_certificate(&cli.out_dir, &format!("{name}.cert.json"), &cert)?;
            println!(
                "({},{},1)-RBIBD with {} blocks in {} classes: {}",
                d.v,
                d.k,
                d.b,
                d.resolution.len(),
                if report.is_pass() { "pass" } else { "FAIL" }
            );
            Ok(if report.is_pass() { Outcome::Pass } else { Outcome::Fail })
        }
        DesignCmd::Factorize { rbibd, out } => {
            let (d, bytes) = read_json::<designs::Rbibd>(rbibd)?;
            let mut cert = CertificateBuilder::new("kset");
            cert.input_bytes("rbibd", &bytes);
            let f = designs::rbibd_to_factorization(&d)?;
            let report = f.verify();
            let name = out.clone().unwrap_or_else(|| "factorization.json".into());
            write_json(&cli.out_dir, &name, &f)?;
            let cert = cert.finish(json!({
                "factorization_file": name,
                "factors": f.factors.len(),
                "verification": report_json(&report),
            }));
            write_certificate(&cli.out_dir, &format!("{name}.cert.json"), &cert)?;
            println!(
                "{}-factorization of K_{}: {}",
                f.factors.len(),
                f.host.n_vertices,
                if report.is_pass() { "pass" } else { "FAIL" }
            );
            Ok(if report.is_pass() { Outcome::Pass } else { Outcome::Fail })
        }
        DesignCmd::Embed {
            factorization,
            reps,
            out,
        } => {
            let (f, fbytes) = read_json::<designs::Factorization>(factorization)?;
            let mut cert = CertificateBuilder::new("kset");
            cert.input_bytes("factorization", &fbytes);
            let mut rep_sets = Vec::new();
            for (i, rep) in reps.iter().enumerate() {
                let (k, bytes) = load_kset(rep)?;
                cert.input_bytes(format!("rep{i}"), &bytes);
                rep_sets.push(k);
            }
            let k = designs::factor_embed(&rep_sets, &f)?;
            let bases = verify_bases(&k);
            let parity = parity_check(&k);
            let name = out.clone().unwrap_or(format!("kset-n{}.json", k.n_lines));
            write_json(&cli.out_dir, &name, &KsFile::from(&k))?;
            let pass = bases.is_pass() && parity;
            let cert = cert.finish(json!({
                "kset_file": name,
                "n_lines": k.n_lines,
                "dim": k.dim,
                "bases": report_json(&bases),
                "parity_certificate": parity,
            }));
            write_certificate(&cli.out_dir, &format!("{name}.cert.json"), &cert)?;
            println!(
                "embedded KS set for J({},2) in dimension {}: {}",
                k.n_lines,
                k.dim,
                if pass { "pass" } else { "FAIL" }
            );
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        DesignCmd::Recurse { base, rbibd, out } => {
            let (b, bbytes) = load_kset(base)?;
            let (d, dbytes) = read_json::<designs::Rbibd>(rbibd)?;
            let mut cert = CertificateBuilder::new("kset");
            cert.input_bytes("base", &bbytes);
            cert.input_bytes("rbibd", &dbytes);
            let k = designs::recursive_construct(&b, &d)?;
            let bases = verify_bases(&k);
            let parity = parity_check(&k);
            let name = out.clone().unwrap_or(format!("kset-n{}.json", k.n_lines));
            write_json(&cli.out_dir, &name, &KsFile::from(&k))?;
            let pass = bases.is_pass() && parity;
            let cert = cert.finish(json!({
                "kset_file": name,
                "n_lines": k.n_lines,
                "dim": k.dim,
                "bases": report_json(&bases),
                "parity_certificate": parity,
            }));
            write_certificate(&cli.out_dir, &format!("{name}.cert.json"), &cert)?;
            println!(
                "recursive KS set for J({},2) in dimension {}: {}",
                k.n_lines,
                k.dim,
                if pass { "pass" } else { "FAIL" }
            );
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

pub fn witness_json(witness: &games::Witness) -> Value {
    match witness {
        games::Witness::Lines { alice, bob } => json!({
            "alice": alice.choices,
            "bob": bob.choices,
        }),
        games::Witness::PointLine { alice, bob_bits } => json!({
            "alice": alice.choices,
            "bob_bits": bob_bits.iter().map(|(p, b)| json!([[p.small(), p.large()], b])).collect::<Vec<_>>(),
        }),
    }
}

fn parse_pair(text: &str) -> Result<Pair> {
    let parts: Vec<u16> = text
        .split(',')
        .map(|t| t.trim().parse::<u16>())
        .collect::<Result<_, _>>()
        .context("pair must be two comma-separated indices, e.g. 1,2")?;
    if parts.len() != 2 {
        bail!("pair must have exactly two indices");
    }
    Ok(Pair::new(parts[0], parts[1])?)
}

fn game(cli: &Cli, cmd: &GameCmd) -> Result<Outcome> {
    match cmd {
        GameCmd::Classical { n, variant } => {
            let variant: Variant = (*variant).into();
            let game = games::StarGame::standard(variant, *n)?;
            let mut cert = CertificateBuilder::new("game");
            cert.input_param("n", n);
            cert.input_param("variant", variant.as_str());
            let out = games::classical_optimum(&game, games::OptimumBudget::default())?;
            println!(
                "classical optimum ({}, N={}): {}/{}{}",
                variant.as_str(),
                n,
                out.max_wins,
                out.total,
                if out.certified { "" } else { " (NOT certified: budget cut)" }
            );
            let cert = cert.finish(json!({
                "variant": variant.as_str(),
                "n": n,
                "max_wins": out.max_wins,
                "total": out.total,
                "value": format!("{}/{}", out.max_wins, out.total),
                "witness": witness_json(&out.witness),
                "certified": out.certified,
                "checked_pairs": out.total,
            }));
            write_certificate(
                &cli.out_dir,
                &format!("game-classical-{}-n{}.cert.json", variant.as_str(), n),
                &cert,
            )?;
            Ok(if out.certified { Outcome::Pass } else { Outcome::Indeterminate })
        }
        GameCmd::Quantum { n, kset } => {
            let (k, bytes) = load_kset(kset)?;
            let mut cert = CertificateBuilder::new("game");
            cert.input_param("n", n);
            cert.input_bytes("kset", &bytes);
            let game = games::StarGame::standard(Variant::Colored, *n)?;
            let value = games::quantum_value(&game, &k)?;
            let (payload, outcome) = match &value {
                QuantumValue::One {
                    losing_pairs_checked,
                } => {
                    println!("quantum value: 1 (exact; {losing_pairs_checked} losing pairs all orthogonal)");
                    (
                        json!({
                            "value": "1",
                            "checked_pairs": losing_pairs_checked,
                        }),
                        Outcome::Pass,
                    )
                }
                QuantumValue::LessThanOne { violations } => {
                    println!("quantum value: < 1 ({} losing pairs with nonzero amplitude)", violations.len());
                    (
                        json!({
                            "value": "<1",
                            "violations": violations,
                        }),
                        Outcome::Fail,
                    )
                }
            };
            let cert = cert.finish(payload);
            write_certificate(&cli.out_dir, &format!("game-quantum-n{n}.cert.json"), &cert)?;
            Ok(outcome)
        }
        GameCmd::Bks {
            kset,
            remove_a,
            remove_b,
            enumerate,
        } => {
            let (k, bytes) = load_kset(kset)?;
            let mut cert = CertificateBuilder::new("bks");
            cert.input_bytes("kset", &bytes);
            if *enumerate {
                let hits = games::optimal_bks_enumerate(&k)?;
                let n = k.n_lines as u64;
                let total = (n * (n - 1) / 2).pow(2);
                println!(
                    "B-KS enumeration at N={}: {} of {} removed-pair choices are B-KS",
                    k.n_lines,
                    hits.len(),
                    total
                );
                let cert = cert.finish(json!({
                    "n": k.n_lines,
                    "total_choices": total,
                    "bks_count": hits.len(),
                    "pairs": hits.iter().map(|p| json!({
                        "s_a": p.s_a.iter().collect::<Vec<_>>(),
                        "s_b": p.s_b.iter().collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                }));
                write_certificate(&cli.out_dir, "bks-enumeration.cert.json", &cert)?;
                return Ok(Outcome::Pass);
            }
            let da = remove_a
                .as_ref()
                .ok_or_else(|| anyhow!("--remove-a required (or --enumerate)"))?;
            let db = remove_b
                .as_ref()
                .ok_or_else(|| anyhow!("--remove-b required (or --enumerate)"))?;
            let pair = BKSPair::from_removed(k.n_lines, parse_pair(da)?, parse_pair(db)?);
            cert.input_param("remove_a", da);
            cert.input_param("remove_b", db);
            let outcome = games::bks_solve(&k, &pair)?;
            let payload = match &outcome {
                BksOutcome::None { nodes } => {
                    println!("B-KS: no classical assignment ({nodes} nodes) — (S_A, S_B) is a bipartite KS set");
                    json!({ "result": "bks", "nodes": nodes })
                }
                BksOutcome::Assignment { alice, bob } => {
                    println!("B-KS: classical assignment exists");
                    json!({ "result": "assignment", "alice": alice, "bob": bob })
                }
            };
            let cert = cert.finish(payload);
            write_certificate(&cli.out_dir, "bks-solve.cert.json", &cert)?;
            Ok(Outcome::Pass)
        }
        GameCmd::Visibility { d, variant } => {
            let variant: Variant = (*variant).into();
            let mut cert = CertificateBuilder::new("visibility");
            cert.input_param("d", d);
            cert.input_param("variant", variant.as_str());
            let report = games::visibility_threshold(variant, *d)?;
            println!("{}", rational_str(&report.threshold));
            let cert = cert.finish(json!({
                "d": d,
                "variant": variant.as_str(),
                "classical_value": rational_str(&report.classical_value),
                "noisy_intercept": rational_str(&report.noisy_intercept),
                "noisy_slope": rational_str(&report.noisy_slope),
                "threshold": rational_str(&report.threshold),
            }));
            write_certificate(
                &cli.out_dir,
                &format!("visibility-{}-d{}.cert.json", variant.as_str(), d),
                &cert,
            )?;
            Ok(Outcome::Pass)
        }
    }
}

fn bell_cmd(cli: &Cli, cmd: &BellCmd) -> Result<Outcome> {
    match cmd {
        BellCmd::Build { n } => {
            let f = bell::build_functional(*n)?;
            let mut cert = CertificateBuilder::new("bell");
            cert.input_param("n", n);
            let common = f.common_lines();
            let mut files = Vec::new();
            std::fs::create_dir_all(&cli.out_dir)?;
            for (i, &x) in common.iter().enumerate() {
                for &y in common.iter().skip(i + 1) {
                    let name = format!("bell-n{n}-m{x}{y}.csv");
                    std::fs::write(cli.out_dir.join(&name), f.m_matrix_csv(x, y))?;
                    files.push(name);
                }
            }
            write_json(&cli.out_dir, &format!("bell-n{n}.json"), &f)?;
            println!(
                "Bell functional N={n}: bound claim {}, wrote {} coefficient matrices",
                f.claimed_bound,
                files.len()
            );
            let cert = cert.finish(json!({
                "n": n,
                "claimed_bound": f.claimed_bound,
                "matrix_files": files,
            }));
            write_certificate(&cli.out_dir, &format!("bell-n{n}-build.cert.json"), &cert)?;
            Ok(Outcome::Pass)
        }
        BellCmd::Bound { n, kset } => {
            let f = bell::build_functional(*n)?;
            let mut cert = CertificateBuilder::new("bell");
            cert.input_param("n", n);
            let (bound, alice, bob) = bell::local_bound(&f);
            println!("local bound at N={n}: {bound}");
            let mut payload = json!({
                "n": n,
                "bound": bound,
                "witness_alice_positions": alice,
                "witness_bob_positions": bob,
                "dim_ns": bell::cg_dim(&f),
            });
            let mut outcome = Outcome::Pass;
            if let Some(path) = kset {
                let (k, bytes) = load_kset(path)?;
                cert.input_bytes("kset", &bytes);
                let qv = bell::functional_quantum_value(&f, &k)?;
                println!("quantum value of the functional: {}", rational_str(&qv));
                payload["quantum_value"] = Value::String(rational_str(&qv));
                let expected = BigRational::from_integer(((*n as i64 - 2) * (*n as i64 - 2)).into());
                if qv != expected {
                    outcome = Outcome::Fail;
                }
            }
            if bound != f.claimed_bound {
                outcome = Outcome::Fail;
            }
            let cert = cert.finish(payload);
            write_certificate(&cli.out_dir, &format!("bell-n{n}-bound.cert.json"), &cert)?;
            Ok(outcome)
        }
        BellCmd::Certify { n, max_saturating } => {
            let f = bell::build_functional(*n)?;
            let mut cert = CertificateBuilder::new("bell");
            cert.input_param("n", n);
            cert.input_param("max_saturating", max_saturating);
            let nt = bell::nontightness_certificate(
                &f,
                bell::CertificateBudget {
                    max_saturating: *max_saturating,
                },
            );
            println!(
                "non-tightness at N={n}: bound {}, {} saturating points, {} forced zeros, affine rank {} < dim(NS)-1 = {}: {}",
                nt.bound,
                nt.n_saturating,
                nt.forced_zeros,
                nt.affine_rank,
                nt.dim_ns - 1,
                if nt.tight { "FAILED (tight)" } else { "not a facet" }
            );
            let complete = nt.complete;
            let tight = nt.tight;
            let ok = nt.per_point_zeros && nt.symmetry_lemma && !tight;
            let cert = cert.finish(serde_json::to_value(&nt)?);
            write_certificate(&cli.out_dir, &format!("bell-n{n}-certify.cert.json"), &cert)?;
            if !complete {
                return Ok(Outcome::Indeterminate);
            }
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
    }
}
