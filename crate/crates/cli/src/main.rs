//! `bem` — reports over clans, orbit-closure membership, torus fixed points,
//! and moment polytopes, as deterministic JSON (CSV where tabular).
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error.
//! `BEM_THREADS` caps worker threads for row/instance parallelism.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use bem_core::bem::{bem_points, moment_image, tangent_weights, Subword};
use bem_core::clans::Clan;
use bem_core::flags::{in_orbit_closure_detailed, random_flags, Flag, MembershipVerdict};
use bem_core::polytope::{
    cone_contains_line, hull_summary, off_geometry, predicted_dim, vertices, PolytopeSummary,
};
use bem_core::report::instance_report;
use bem_core::table::{reference_rows, row_report, table_report_from_rows};
use bem_core::weyl::{reduced_words, Permutation, QVec, Word};

#[derive(Parser)]
#[command(
    name = "bem",
    version,
    about = "Exact combinatorics and moment polytopes for (GL_{p+q}, GL_p x GL_q) orbit closures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Signature, smoothness, and rank tables of a clan
    Clan {
        /// Clan string, e.g. "1+-1" (labels >= 10 written "(12)")
        text: String,
        /// Also test containment of this pattern clan
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Moment polytope of an instance: fixed points, f-vector, cross-checks
    Polytope {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Matchless clan; defaults to +^p -^q
        #[arg(long)]
        gamma: Option<String>,
        /// Comma-separated letters, e.g. "3,2"; empty for the closed orbit
        #[arg(long, default_value = "")]
        word: String,
        /// Write hull geometry in OFF format to this path
        #[arg(long)]
        emit_off: Option<PathBuf>,
    },
    /// Recompute the reference f-vector table (p=q=2, reduced words, |Q|<=3)
    Table1 {
        /// JSON output (default)
        #[arg(long)]
        json: bool,
        /// CSV output
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Orbit-closure membership of a flag, with the first violated condition
    Membership {
        #[arg(long)]
        gamma: String,
        /// JSON file: {"n": 4, "basis": [[row], ..]}, entries integers or "a/b"
        #[arg(long, conflicts_with = "random")]
        flag_file: Option<PathBuf>,
        /// Test this many seeded random flags instead of reading a file
        #[arg(long)]
        random: Option<usize>,
        /// Seed for the random flags
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the pair condition (redundant for noncrossing clans)
        #[arg(long)]
        no_crossing_check: bool,
    },
    /// All torus fixed points of an instance with their moment images
    FixedPoints {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Tangent weights at one fixed point, with the vertex classification
    Weights {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "")]
        word: String,
        /// Subword entries, e.g. "3,-" (a letter keeps, "-" skips)
        #[arg(long, default_value = "")]
        subword: String,
        /// Shuffled permutation u in one-line notation; defaults to identity
        #[arg(long)]
        perm: Option<String>,
    },
    /// f-vectors across all reduced words of a permutation (an experiment,
    /// not a theorem check)
    ExperimentEquivalence {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Permutation in one-line notation, e.g. "3,2,1,4"
        #[arg(long)]
        w: String,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("BEM_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Clan { text, pattern } => cmd_clan(&text, pattern.as_deref()),
        Command::Polytope {
            p,
            q,
            gamma,
            word,
            emit_off,
        } => cmd_polytope(p, q, gamma.as_deref(), &word, emit_off.as_deref()),
        Command::Table1 { csv, .. } => cmd_table1(csv),
        Command::Membership {
            gamma,
            flag_file,
            random,
            seed,
            no_crossing_check,
        } => cmd_membership(&gamma, flag_file.as_deref(), random, seed, !no_crossing_check),
        Command::FixedPoints { p, q, gamma, word } => {
            let (gamma, word) = instance(p, q, gamma.as_deref(), &word)?;
            print_json(&instance_report(&gamma, &word)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Weights {
            p,
            q,
            word,
            subword,
            perm,
        } => cmd_weights(p, q, &word, &subword, perm.as_deref()),
        Command::ExperimentEquivalence { p, q, w, csv, .. } => cmd_experiment(p, q, &w, csv),
    }
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn parse_word(text: &str, n: usize) -> anyhow::Result<Word> {
    let text = text.trim();
    let letters: Vec<usize> = if text.is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|t| t.trim().parse::<usize>().context("word letters are integers"))
            .collect::<anyhow::Result<_>>()?
    };
    // fixed-point enumeration is 2^N per shuffle; keep requests sane
    if letters.len() > 20 {
        bail!("words longer than 20 letters are not supported");
    }
    Ok(Word::new(letters, n)?)
}

fn parse_perm(text: &str) -> anyhow::Result<Permutation> {
    let images: Vec<usize> = text
        .trim()
        .split(',')
        .map(|t| t.trim().parse::<usize>().context("permutation entries are integers"))
        .collect::<anyhow::Result<_>>()?;
    Ok(Permutation::new(images)?)
}

/// Resolve (p, q, gamma, word) into a validated matchless instance.
fn instance(p: usize, q: usize, gamma: Option<&str>, word: &str) -> anyhow::Result<(Clan, Word)> {
    if p + q == 0 {
        bail!("p + q must be positive");
    }
    let gamma = match gamma {
        Some(text) => {
            let clan: Clan = text.parse()?;
            if clan.signature() != (p, q) {
                bail!(
                    "clan {clan} has signature {:?}, expected ({p}, {q})",
                    clan.signature()
                );
            }
            if !clan.is_matchless() {
                bail!("clan {clan} is not matchless");
            }
            clan
        }
        None => Clan::reference(p, q),
    };
    let word = parse_word(word, p + q)?;
    Ok((gamma, word))
}

#[derive(Serialize)]
struct RankPairEntry {
    i: usize,
    j: usize,
    value: usize,
}

#[derive(Serialize)]
struct PatternCheck {
    pattern: String,
    contained: bool,
}

#[derive(Serialize)]
struct ClanReport {
    clan: String,
    n: usize,
    p: usize,
    q: usize,
    matchless: bool,
    noncrossing: bool,
    smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    offending_pattern: Option<String>,
    rank_plus: Vec<usize>,
    rank_minus: Vec<usize>,
    rank_pairs: Vec<RankPairEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern_check: Option<PatternCheck>,
}

fn cmd_clan(text: &str, pattern: Option<&str>) -> anyhow::Result<ExitCode> {
    let clan: Clan = text.parse()?;
    let n = clan.n();
    let (p, q) = clan.signature();
    let rank_plus = (1..=n).map(|i| clan.rank_plus(i)).collect::<Result<_, _>>()?;
    let rank_minus = (1..=n)
        .map(|i| clan.rank_minus(i))
        .collect::<Result<_, _>>()?;
    let mut rank_pairs = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            rank_pairs.push(RankPairEntry {
                i,
                j,
                value: clan.rank_pair(i, j)?,
            });
        }
    }
    let pattern_check = match pattern {
        Some(text) => {
            let pat: Clan = text.parse()?;
            Some(PatternCheck {
                pattern: pat.to_string(),
                contained: clan.contains_pattern(&pat),
            })
        }
        None => None,
    };
    let report = ClanReport {
        clan: clan.to_string(),
        n,
        p,
        q,
        matchless: clan.is_matchless(),
        noncrossing: clan.is_noncrossing(),
        smooth: clan.is_smooth_orbit_closure(),
        offending_pattern: clan.offending_pattern().map(str::to_string),
        rank_plus,
        rank_minus,
        rank_pairs,
        pattern_check,
    };
    print_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CrossCheck {
    perm: Permutation,
    subword: Subword,
    image: QVec,
    weight_cone_pointed: bool,
    is_vertex: bool,
    agree: bool,
}

#[derive(Serialize)]
struct PolytopeReport {
    gamma: String,
    word: Word,
    p: usize,
    q: usize,
    n: usize,
    fixed_point_count: usize,
    predicted_dim: usize,
    dim_matches_prediction: bool,
    summary: PolytopeSummary,
    /// Per-fixed-point vertex/weight cross-check; present only for the
    /// reference clan, where the tangent-weight formula applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<Vec<CrossCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check_all_agree: Option<bool>,
}

fn cmd_polytope(
    p: usize,
    q: usize,
    gamma: Option<&str>,
    word: &str,
    emit_off: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    let (gamma, word) = instance(p, q, gamma, word)?;
    let points = bem_points(&gamma, &word)?;
    let summary = hull_summary(&points)?;
    let predicted = predicted_dim(p, q, &word);
    let is_reference = gamma == Clan::reference(p, q);
    let fixed = bem_core::bem::fixed_points(&gamma, &word)?;
    let cross_check: Option<Vec<CrossCheck>> = if is_reference {
        let verts: Vec<QVec> = vertices(&points);
        let checks = fixed
            .par_iter()
            .map(|fp| -> anyhow::Result<CrossCheck> {
                let image = moment_image(&fp.x, &fp.subword, &word)?;
                let weights = tangent_weights(&fp.x, &fp.subword, &word, p, q)?;
                let pointed = !cone_contains_line(&weights);
                let is_vertex = verts.contains(&image);
                Ok(CrossCheck {
                    perm: fp.x.clone(),
                    subword: fp.subword.clone(),
                    image,
                    weight_cone_pointed: pointed,
                    is_vertex,
                    agree: pointed == is_vertex,
                })
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Some(checks)
    } else {
        None
    };
    let all_agree = cross_check
        .as_ref()
        .map(|checks| checks.iter().all(|c| c.agree));
    let report = PolytopeReport {
        gamma: gamma.to_string(),
        word: word.clone(),
        p,
        q,
        n: p + q,
        fixed_point_count: fixed.len(),
        predicted_dim: predicted,
        dim_matches_prediction: summary.affine_dim == predicted,
        summary,
        cross_check,
        cross_check_all_agree: all_agree,
    };
    if let Some(path) = emit_off {
        let off = off_geometry(&points)?;
        fs::write(path, off).with_context(|| format!("writing {}", path.display()))?;
    }
    print_json(&report)?;
    Ok(if all_agree == Some(false) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_table1(csv: bool) -> anyhow::Result<ExitCode> {
    let rows: Vec<_> = reference_rows().par_iter().map(row_report).collect();
    let report = table_report_from_rows(rows);
    if csv {
        println!("label,word,expected_dim,expected_v,expected_e,expected_f,dim,v,e,f,pass");
        for row in &report.rows {
            for (letters, fv) in row.words.iter().zip(&row.computed) {
                let word: Vec<String> = letters.iter().map(usize::to_string).collect();
                println!(
                    "\"{}\",({}),{},{},{}",
                    row.label,
                    word.join(" "),
                    row.expected,
                    fv,
                    fv == &row.expected,
                );
            }
        }
    } else {
        print_json(&report)?;
    }
    Ok(if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Deserialize)]
struct FlagFile {
    n: usize,
    basis: Vec<QVec>,
}

#[derive(Serialize)]
struct MembershipReport {
    gamma: String,
    n: usize,
    check_crossing: bool,
    #[serde(flatten)]
    verdict: MembershipVerdict,
}

#[derive(Serialize)]
struct CrossingComparison {
    agreements: usize,
    disagreements: Vec<usize>,
}

#[derive(Serialize)]
struct RandomMembershipReport {
    gamma: String,
    n: usize,
    noncrossing: bool,
    seed: u64,
    flags_tested: usize,
    members: usize,
    nonmembers: usize,
    /// Agreement between membership with and without the pair condition,
    /// per flag index. Populated unless --no-crossing-check was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    crossing_comparison: Option<CrossingComparison>,
}

fn cmd_membership(
    gamma: &str,
    flag_file: Option<&std::path::Path>,
    random: Option<usize>,
    seed: u64,
    check_crossing: bool,
) -> anyhow::Result<ExitCode> {
    let gamma: Clan = gamma.parse()?;
    match (flag_file, random) {
        (Some(path), None) => {
            let raw = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let parsed: FlagFile = serde_json::from_str(&raw).context("flag file JSON")?;
            if parsed.basis.len() != parsed.n
                || parsed.basis.iter().any(|row| row.n() != parsed.n)
            {
                bail!("flag basis must be an n x n array (n = {})", parsed.n);
            }
            let flag = Flag::new(parsed.basis)?;
            let verdict = in_orbit_closure_detailed(&flag, &gamma, check_crossing)?;
            print_json(&MembershipReport {
                gamma: gamma.to_string(),
                n: gamma.n(),
                check_crossing,
                verdict,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        (None, Some(count)) => {
            let flags = random_flags(gamma.n(), count, seed);
            let verdicts = flags
                .par_iter()
                .map(|f| in_orbit_closure_detailed(f, &gamma, check_crossing))
                .collect::<Result<Vec<_>, _>>()?;
            let members = verdicts.iter().filter(|v| v.member).count();
            let crossing_comparison = if check_crossing {
                let without = flags
                    .par_iter()
                    .map(|f| in_orbit_closure_detailed(f, &gamma, false))
                    .collect::<Result<Vec<_>, _>>()?;
                let disagreements: Vec<usize> = verdicts
                    .iter()
                    .zip(&without)
                    .enumerate()
                    .filter(|(_, (a, b))| a.member != b.member)
                    .map(|(k, _)| k)
                    .collect();
                Some(CrossingComparison {
                    agreements: count - disagreements.len(),
                    disagreements,
                })
            } else {
                None
            };
            print_json(&RandomMembershipReport {
                gamma: gamma.to_string(),
                n: gamma.n(),
                noncrossing: gamma.is_noncrossing(),
                seed,
                flags_tested: count,
                members,
                nonmembers: count - members,
                crossing_comparison,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        _ => Err(anyhow!("provide exactly one of --flag-file or --random")),
    }
}

#[derive(Serialize)]
struct WeightsReport {
    p: usize,
    q: usize,
    word: Word,
    subword: Subword,
    perm: Permutation,
    image: QVec,
    weights: Vec<QVec>,
    cone_contains_line: bool,
    /// Vertex classification by pointedness of the weight cone.
    classified_vertex: bool,
    /// Vertex membership recomputed from the hull, as a cross-check.
    hull_vertex: bool,
    agree: bool,
}

fn cmd_weights(
    p: usize,
    q: usize,
    word: &str,
    subword: &str,
    perm: Option<&str>,
) -> anyhow::Result<ExitCode> {
    let n = p + q;
    let word = parse_word(word, n)?;
    let subword = Subword::parse(&word, subword)?;
    let u = match perm {
        Some(text) => parse_perm(text)?,
        None => Permutation::identity(n),
    };
    let gamma = Clan::reference(p, q);
    if !gamma.gamma_shuffled_perms()?.contains(&u) {
        bail!("permutation {u} is not {gamma}-shuffled");
    }
    let weights = tangent_weights(&u, &subword, &word, p, q)?;
    let has_line = cone_contains_line(&weights);
    let image = moment_image(&u, &subword, &word)?;
    let hull_vertex = vertices(&bem_points(&gamma, &word)?).contains(&image);
    let classified_vertex = !has_line;
    let report = WeightsReport {
        p,
        q,
        word,
        subword,
        perm: u,
        image,
        weights,
        cone_contains_line: has_line,
        classified_vertex,
        hull_vertex,
        agree: classified_vertex == hull_vertex,
    };
    let agree = report.agree;
    print_json(&report)?;
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct ExperimentRow {
    word: Vec<usize>,
    dim: usize,
    vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_faces: Option<usize>,
}

#[derive(Serialize)]
struct ExperimentReport {
    p: usize,
    q: usize,
    w: Permutation,
    reduced_word_count: usize,
    rows: Vec<ExperimentRow>,
    all_agree: bool,
}

fn cmd_experiment(p: usize, q: usize, w: &str, csv: bool) -> anyhow::Result<ExitCode> {
    let n = p + q;
    let w = parse_perm(w)?;
    if w.n() != n {
        bail!("permutation has {} entries, expected p+q = {n}", w.n());
    }
    let gamma = Clan::reference(p, q);
    let words = reduced_words(&w)?;
    let rows = words
        .par_iter()
        .map(|word| -> anyhow::Result<ExperimentRow> {
            let summary = hull_summary(&bem_points(&gamma, word)?)?;
            Ok(ExperimentRow {
                word: word.letters().to_vec(),
                dim: summary.affine_dim,
                vertices: summary.vertex_count,
                edges: summary.edge_count,
                two_faces: summary.two_face_count,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let all_agree = rows.windows(2).all(|pair| {
        (pair[0].dim, pair[0].vertices, pair[0].edges, pair[0].two_faces)
            == (pair[1].dim, pair[1].vertices, pair[1].edges, pair[1].two_faces)
    });
    if csv {
        println!("word,dim,v,e,f");
        for row in &rows {
            let word: Vec<String> = row.word.iter().map(usize::to_string).collect();
            println!(
                "({}),{},{},{},{}",
                word.join(" "),
                row.dim,
                row.vertices,
                row.edges.map_or("-".into(), |e| e.to_string()),
                row.two_faces.map_or("-".into(), |f| f.to_string()),
            );
        }
    } else {
        print_json(&ExperimentReport {
            p,
            q,
            w,
            reduced_word_count: rows.len(),
            rows,
            all_agree,
        })?;
    }
    Ok(ExitCode::SUCCESS)
}
