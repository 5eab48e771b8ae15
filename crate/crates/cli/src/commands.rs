use std::collections::HashSet;
use std::fs;
use std::path::Path;

use nonevade::caps::Caps;
use nonevade::certifier::{
    certify, extract_collapses, noncomplement_complex, verify_certificate, Certificate,
    CertifyTrace, Decision,
};
use nonevade::complex::{proper_part_reduced_euler, Complex};
use nonevade::game::{compile_strategy, exhaustive_check, play, Strategy};
use nonevade::lattice::{generate, parse_lattice, Family, GenerateParams, Lattice};
use nonevade::oracles::{brute_collapsible, brute_nonevasive, mobius};
use nonevade::suite::{run_suite, SuiteConfig};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, SEMANTIC, USAGE};
use crate::{render, CapFlags, Cli, Command, Instance};

pub fn run(cli: Cli) -> Result<(), CliError> {
    let json = cli.json;
    match cli.command {
        Command::Validate { file } => validate(&file, json),
        Command::Complements(inst) => complements(&inst, json),
        Command::Certify { instance, output } => certify_cmd(&instance, output.as_deref(), json),
        Command::Verify { instance, cert } => verify(&instance, &cert, json),
        Command::Collapse { instance, output } => collapse(&instance, output.as_deref(), json),
        Command::Strategy { instance, output } => strategy(&instance, output.as_deref(), json),
        Command::Game {
            instance,
            exhaustive,
            hidden,
            caps,
        } => {
            let caps = resolve_caps(&caps)?;
            if exhaustive {
                game_exhaustive(&instance, caps, json)
            } else {
                game_hidden(&instance, &hidden.unwrap_or_default(), json)
            }
        }
        Command::Mobius { file } => mobius_cmd(&file, json),
        Command::Oracle { instance, caps } => oracle(&instance, resolve_caps(&caps)?, json),
        Command::Gen {
            family,
            n,
            m,
            p,
            seed,
            output,
        } => gen(
            &family,
            GenerateParams { n, m, p, seed },
            output.as_deref(),
            json,
        ),
        Command::Suite {
            seed,
            random_count,
            caps,
        } => suite(seed, random_count, resolve_caps(&caps)?, json),
    }
}

/// Flags override `NONEVADE_CAPS`, which overrides the defaults.
fn resolve_caps(flags: &CapFlags) -> Result<Caps, CliError> {
    let mut caps = Caps::from_env()?;
    for (value, slot) in [
        (flags.cap_nonevasive, &mut caps.nonevasive),
        (flags.cap_collapse, &mut caps.collapse),
        (flags.cap_game, &mut caps.game),
    ] {
        match value {
            Some(0) => return Err(CliError::usage("caps must be positive")),
            Some(v) => *slot = v,
            None => {}
        }
    }
    Ok(caps)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_lattice(path: &Path) -> Result<Lattice, CliError> {
    Ok(parse_lattice(&read(path)?)?)
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn print_json(value: &impl Serialize) {
    print!("{}", to_json(value));
}

/// The instance's lattice, its complex Δ(P̄) and a checked certificate.
struct Certified {
    lattice: Lattice,
    complex: Complex,
    cert: Certificate,
    trace: CertifyTrace,
}

fn certified(inst: &Instance) -> Result<Certified, CliError> {
    let lattice = load_lattice(&inst.file)?;
    let (cert, trace) = certify(&lattice, &inst.x)?;
    let complex = noncomplement_complex(&lattice, &inst.x)?;
    verify_certificate(&complex, &cert)?;
    Ok(Certified {
        lattice,
        complex,
        cert,
        trace,
    })
}

fn validate(file: &Path, json: bool) -> Result<(), CliError> {
    let l = load_lattice(file)?;
    let atoms = l.labels_of(&l.atoms());
    let coatoms = l.labels_of(&l.coatoms());
    if json {
        print_json(&json!({
            "elements": l.len(),
            "bottom": l.label(l.bottom()),
            "top": l.label(l.top()),
            "atoms": atoms,
            "coatoms": coatoms,
        }));
    } else {
        println!(
            "lattice: {} elements, bottom {}, top {}",
            l.len(),
            l.label(l.bottom()),
            l.label(l.top())
        );
        println!("atoms: {}", atoms.join(" "));
        println!("coatoms: {}", coatoms.join(" "));
    }
    Ok(())
}

fn complements(inst: &Instance, json: bool) -> Result<(), CliError> {
    let l = load_lattice(&inst.file)?;
    let co = l.complements_of(&inst.x)?;
    if json {
        print_json(&json!({ "x": inst.x, "complements": co }));
    } else {
        println!("Co({}) = {{{}}}", inst.x, co.join(", "));
    }
    Ok(())
}

#[derive(Serialize)]
struct CertifySummary {
    vertices: usize,
    faces: usize,
    splits: usize,
    prunes: usize,
    depth: usize,
    events: usize,
}

fn certify_cmd(inst: &Instance, output: Option<&Path>, json: bool) -> Result<(), CliError> {
    let c = certified(inst)?;
    let summary = CertifySummary {
        vertices: c.complex.vertex_count(),
        faces: c.complex.face_count(),
        splits: c.cert.splits(),
        prunes: c
            .trace
            .events
            .iter()
            .filter(|e| matches!(e.decision, Decision::Prune { .. }))
            .count(),
        depth: c.cert.depth(),
        events: c.trace.events.len(),
    };
    if let Some(path) = output {
        write_output(path, &to_json(&c.cert))?;
    }
    if json {
        print_json(&json!({ "x": inst.x, "certificate": c.cert, "summary": summary }));
    } else {
        print!("{}", render::certificate(&c.cert));
        println!(
            "{} vertices, {} faces; {} splits, {} prunes, depth {}; verified",
            summary.vertices, summary.faces, summary.splits, summary.prunes, summary.depth
        );
    }
    Ok(())
}

fn verify(inst: &Instance, cert_path: &Path, json: bool) -> Result<(), CliError> {
    let lattice = load_lattice(&inst.file)?;
    let cert: Certificate = serde_json::from_str(&read(cert_path)?)
        .map_err(|e| CliError::new(USAGE, "parse", format!("{}: {e}", cert_path.display())))?;
    let complex = noncomplement_complex(&lattice, &inst.x)?;
    verify_certificate(&complex, &cert)?;
    if json {
        print_json(&json!({ "x": inst.x, "verified": true, "vertices": complex.vertex_count() }));
    } else {
        println!(
            "certificate verified for Δ with {} vertices, {} faces",
            complex.vertex_count(),
            complex.face_count()
        );
    }
    Ok(())
}

fn collapse(inst: &Instance, output: Option<&Path>, json: bool) -> Result<(), CliError> {
    let c = certified(inst)?;
    let seq = extract_collapses(&c.cert, &c.complex)?;
    if let Some(path) = output {
        write_output(path, &to_json(&seq))?;
    }
    if json {
        print_json(&seq);
    } else {
        print!("{}", render::collapses(&seq));
    }
    Ok(())
}

fn compiled(inst: &Instance) -> Result<(Certified, Strategy), CliError> {
    let c = certified(inst)?;
    let strategy = compile_strategy(&c.cert, c.complex.vertices())?;
    Ok((c, strategy))
}

fn strategy(inst: &Instance, output: Option<&Path>, json: bool) -> Result<(), CliError> {
    let (c, strategy) = compiled(inst)?;
    if let Some(path) = output {
        write_output(path, &to_json(&strategy))?;
    }
    if json {
        print_json(&strategy);
    } else {
        print!("{}", render::strategy(&strategy));
        println!(
            "depth {} (bound {})",
            strategy.depth(),
            c.complex.vertex_count() - 1
        );
    }
    Ok(())
}

fn game_exhaustive(inst: &Instance, caps: Caps, json: bool) -> Result<(), CliError> {
    let (c, strategy) = compiled(inst)?;
    let ground = c.complex.vertices();
    let report = exhaustive_check(&strategy, ground, &c.lattice, caps.game)?;
    let bound = ground.len() - 1;
    if json {
        print_json(&report);
    } else {
        println!(
            "{} subsets, {} chains, {} mismatches, max {} queries (bound {bound})",
            report.subsets_tested, report.chains, report.mismatches, report.max_queries
        );
        let histogram: Vec<String> = report.histogram.iter().map(u64::to_string).collect();
        println!("queries histogram: {}", histogram.join(" "));
    }
    if report.mismatches > 0 || report.max_queries > bound {
        return Err(CliError::new(
            SEMANTIC,
            "game",
            "strategy failed the exhaustive check",
        ));
    }
    Ok(())
}

fn game_hidden(inst: &Instance, hidden: &[String], json: bool) -> Result<(), CliError> {
    let (c, strategy) = compiled(inst)?;
    let hidden: HashSet<String> = hidden.iter().filter(|h| !h.is_empty()).cloned().collect();
    let members: Vec<usize> = hidden
        .iter()
        .map(|h| {
            c.complex
                .index_of(h)
                .map_err(|_| CliError::usage(format!("{h} is not in the proper part")))
        })
        .collect::<Result<_, _>>()?;
    let truth = c.complex.contains_face(&{
        let mut m = members;
        m.sort_unstable();
        m
    });
    let (verdict, transcript) = play(&strategy, &hidden);
    if json {
        print_json(&json!({ "transcript": transcript, "chain": truth }));
    } else {
        for q in &transcript.queries {
            println!("{}? {}", q.vertex, if q.answer { "yes" } else { "no" });
        }
        println!(
            "verdict: {} after {} queries",
            if verdict { "chain" } else { "not a chain" },
            transcript.queries.len()
        );
    }
    if verdict != truth {
        return Err(CliError::new(
            SEMANTIC,
            "game",
            "verdict disagrees with the hidden set",
        ));
    }
    Ok(())
}

fn mobius_cmd(file: &Path, json: bool) -> Result<(), CliError> {
    let l = load_lattice(file)?;
    let mu = mobius(&l);
    let euler = proper_part_reduced_euler(&l);
    if json {
        print_json(&json!({ "mobius": mu, "reduced_euler": euler }));
    } else {
        println!("mu(0, 1) = {mu}");
        println!("reduced Euler characteristic of the proper part = {euler}");
    }
    if mu != euler {
        return Err(CliError::new(
            SEMANTIC,
            "mobius",
            "mu and the reduced Euler characteristic differ",
        ));
    }
    Ok(())
}

fn oracle(inst: &Instance, caps: Caps, json: bool) -> Result<(), CliError> {
    let lattice = load_lattice(&inst.file)?;
    let complex = noncomplement_complex(&lattice, &inst.x)?;
    let nonevasive = brute_nonevasive(&complex, caps.nonevasive)?;
    let collapsible = brute_collapsible(&complex, caps.collapse)?.is_some();
    if json {
        print_json(&json!({
            "vertices": complex.vertex_count(),
            "faces": complex.face_count(),
            "nonevasive": nonevasive,
            "collapsible": collapsible,
        }));
    } else {
        println!(
            "{} vertices, {} faces: {}, {}",
            complex.vertex_count(),
            complex.face_count(),
            if nonevasive { "nonevasive" } else { "evasive" },
            if collapsible {
                "collapsible"
            } else {
                "not collapsible"
            }
        );
    }
    if !nonevasive || !collapsible {
        return Err(CliError::new(
            SEMANTIC,
            "oracle",
            "the complex is not nonevasive",
        ));
    }
    Ok(())
}

fn gen(
    family: &str,
    params: GenerateParams,
    output: Option<&Path>,
    json: bool,
) -> Result<(), CliError> {
    let family: Family = family.parse()?;
    let lattice = generate(family, &params)?;
    let mut echo = format!("nonevade gen {family} --n {}", params.n);
    if let Some(m) = params.m {
        echo.push_str(&format!(" --m {m}"));
    }
    if family == Family::Random {
        echo.push_str(&format!(" --p {} --seed {}", params.p, params.seed));
    }
    let contents = if json {
        let mut doc = serde_json::to_value(lattice.to_document()).expect("documents serialize");
        doc["generator"] = json!(echo);
        to_json(&doc)
    } else {
        format!("# {echo}\n{}", lattice.to_text())
    };
    match output {
        Some(path) => write_output(path, &contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn suite(
    seed: Option<u64>,
    random_count: Option<usize>,
    caps: Caps,
    json: bool,
) -> Result<(), CliError> {
    let mut config = SuiteConfig {
        caps,
        ..SuiteConfig::default()
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    if let Some(count) = random_count {
        config.random_lattices = count;
    }
    let report = run_suite(&config);
    if json {
        print_json(&report);
    } else {
        println!(
            "{} lattices, {} instances, seed {}",
            report.lattices, report.instances, report.seed
        );
        for c in &report.criteria {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            println!("{verdict} {}. {} ({} checks)", c.id, c.title, c.checked);
            for f in &c.failures {
                println!("    {f}");
            }
        }
    }
    if !report.passed() {
        return Err(CliError::new(SEMANTIC, "suite", "some criteria failed"));
    }
    Ok(())
}
