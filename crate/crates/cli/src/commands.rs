//! Subcommand implementations.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use gsurf_core::atlas::Atlas;
use gsurf_core::conv::{ConversionSet, OrbitMode};
use gsurf_core::engine::{self, EngineOptions};
use gsurf_core::freq::FrequencyTable;
use gsurf_core::graph::{self, LoadOptions, SourceGraph};
use gsurf_core::lattice::GraphletLattice;
use gsurf_core::oracle;

use crate::cache;
use crate::CliError;

fn parse_mode(mode: &str) -> Result<OrbitMode, CliError> {
    match mode {
        "orbit" => Ok(OrbitMode::Orbit),
        "hatted" => Ok(OrbitMode::Hatted),
        other => Err(CliError::Usage(format!(
            "mode must be orbit or hatted, got {other:?}"
        ))),
    }
}

fn build_atlas(max: u8) -> Result<Atlas, CliError> {
    Atlas::build(max).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn atlas(max: u8, out: Option<PathBuf>) -> Result<(), CliError> {
    if max > 8 {
        return Err(CliError::Usage(format!(
            "family bound {max} exceeds the supported 8"
        )));
    }
    let t0 = std::time::Instant::now();
    let atlas = build_atlas(max)?;
    println!("atlas {} (families 1..={max})", atlas.hash());
    println!("{:>3} {:>10} {:>10}", "s", "patterns", "orbits");
    for s in 1..=max {
        println!(
            "{:>3} {:>10} {:>10}",
            s,
            atlas.family(s).patterns.len(),
            atlas.family(s).orbit_total()
        );
    }
    println!("built in {:.2?}", t0.elapsed());
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(&path)?);
        atlas.export(&mut w)?;
        println!("export written to {}", path.display());
    }
    Ok(())
}

pub fn matrices(t: u8, mode: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    let mode = parse_mode(mode)?;
    if t < 2 || t > 7 {
        return Err(CliError::Usage(format!("t must be in 2..=7, got {t}")));
    }
    if t == 7 {
        eprintln!("note: t=7 runs millions of pairwise counts; expect a long build");
    }
    let atlas = build_atlas(t)?;
    let t0 = std::time::Instant::now();
    let set = ConversionSet::build(&atlas, t, mode)
        .map_err(|e| CliError::Verification(e.to_string()))?;
    println!("atlas {}  t={t}  mode={}", set.atlas_hash, mode.as_str());
    for s in 1..=t {
        let u = &set.family_gross[s as usize - 1];
        let inv = &set.family_inverse[s as usize - 1];
        println!(
            "U_{s}: {}x{} nnz {}  inverse verified (involution), same sparsity: {}",
            u.n(),
            u.n(),
            u.nnz(),
            inv.nnz() == u.nnz()
        );
    }
    println!(
        "U_tilde: {0}x{0} nnz {1};  W_tilde: {0}x{0} nnz {2}",
        set.inter_gross.n(),
        set.inter_gross.nnz(),
        set.inter_net.nnz()
    );
    println!("built and verified in {:.2?}", t0.elapsed());
    let dir = out.unwrap_or_else(cache::cache_dir);
    let target = dir.join(format!("{}-t{t}-{}", set.atlas_hash, mode.as_str()));
    cache::write_set(&target, &set)?;
    println!("matrices written to {}", target.display());
    Ok(())
}

fn load_graph(input: &PathBuf, format: &str, strict: bool) -> Result<SourceGraph, CliError> {
    let fmt = match format {
        "auto" => {
            if input.extension().is_some_and(|e| e == "mtx") {
                "mtx"
            } else {
                "edgelist"
            }
        }
        other => other,
    };
    let res = match fmt {
        "edgelist" => graph::load_edge_list(input, LoadOptions { strict }),
        "mtx" => graph::load_matrix_market(input),
        other => {
            return Err(CliError::Usage(format!(
                "format must be edgelist, mtx, or auto, got {other:?}"
            )))
        }
    };
    res.map_err(|e| match e {
        graph::GraphError::Io(io) => CliError::Io(io.to_string()),
        other => CliError::Usage(other.to_string()),
    })
}

pub struct CountArgs {
    pub input: PathBuf,
    pub format: String,
    pub t: u8,
    pub filters: bool,
    pub reduced: bool,
    pub out: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub stats: Option<PathBuf>,
    pub hatted: bool,
    pub sample_bfs: Option<usize>,
    pub strict: bool,
}

pub fn count(args: CountArgs) -> Result<(), CliError> {
    if args.t < 2 || args.t > 5 {
        return Err(CliError::Usage(format!(
            "counting supports t in 2..=5, got {}",
            args.t
        )));
    }
    let mut g = load_graph(&args.input, &args.format, args.strict)?;
    eprintln!("loaded {}: n={} m={}", args.input.display(), g.n(), g.m());
    if let Some(k) = args.sample_bfs {
        g = engine::bfs_sample(&g, k);
        eprintln!("breadth-first sample: n={} m={}", g.n(), g.m());
    }
    let atlas = build_atlas(args.t)?;
    let (conv, cached) = cache::load_or_build(&atlas, args.t, OrbitMode::Orbit)?;
    eprintln!(
        "conversion matrices {} (atlas {})",
        if cached { "loaded from cache" } else { "built" },
        conv.atlas_hash
    );
    let t0 = std::time::Instant::now();
    let run = engine::run(
        &g,
        &atlas,
        &conv,
        EngineOptions {
            t: args.t,
            filters: args.filters,
            reduced: args.reduced,
        },
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    eprintln!("counted in {:.2?}", t0.elapsed());

    let header = run_header(&args, &atlas, &g);
    let table: FrequencyTable = if args.hatted {
        run.net.aggregate_orbits(&atlas)
    } else {
        run.net.clone()
    };
    match &args.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write_csv(&g, &header, &mut w)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            table.write_csv(&g, &header, &mut w)?;
        }
    }
    if let Some(path) = &args.json {
        let mut w = BufWriter::new(File::create(path)?);
        table.write_json(&g, &header, &mut w)?;
    }
    if let Some(path) = &args.stats {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "{}", run.stats.to_json_with_meta(&header))?;
    }
    for f in &run.stats.families {
        let p = f.percentages();
        eprintln!(
            "family {}: filtered {:.1}%  reduced {:.1}%  zero-found-by-full {:.1}%  full {:.1}%",
            f.s, p[0], p[1], p[2], p[3]
        );
    }
    Ok(())
}

fn run_header(args: &CountArgs, atlas: &Atlas, g: &SourceGraph) -> Vec<(&'static str, String)> {
    vec![
        ("source", "gsurf engine".into()),
        ("input", args.input.display().to_string()),
        ("vertices", g.n().to_string()),
        ("edges", g.m().to_string()),
        ("t", args.t.to_string()),
        ("mode", if args.hatted { "hatted".into() } else { "orbit".into() }),
        ("filters", args.filters.to_string()),
        ("reduced_systems", args.reduced.to_string()),
        ("atlas", atlas.hash()),
    ]
}

pub fn verify(
    input: PathBuf,
    format: &str,
    t: u8,
    budget: u64,
    dump_reference: Option<PathBuf>,
) -> Result<(), CliError> {
    if t < 2 || t > 5 {
        return Err(CliError::Usage(format!("verify supports t in 2..=5, got {t}")));
    }
    let g = load_graph(&input, format, false)?;
    let atlas = build_atlas(t)?;
    let (conv, _) = cache::load_or_build(&atlas, t, OrbitMode::Orbit)?;
    let run = engine::run(&g, &atlas, &conv, EngineOptions::default_t(t))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let want = oracle::brute_net(&g, &atlas, t, budget)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(path) = dump_reference {
        let header = vec![
            ("source", "oracle".to_string()),
            ("input", input.display().to_string()),
            ("t", t.to_string()),
            ("atlas", atlas.hash()),
        ];
        let mut w = BufWriter::new(File::create(path)?);
        want.table.write_csv(&g, &header, &mut w)?;
    }
    let mut mismatches = 0usize;
    for v in 0..g.n() {
        for (idx, id) in run.net.ids.iter().enumerate() {
            let (a, b) = (run.net.get(v, idx), want.table.get(v, idx));
            if a != b {
                if mismatches == 0 {
                    eprintln!(
                        "first mismatch: vertex {} graphlet {}: engine {} reference {}",
                        g.label(v as u32),
                        id,
                        a,
                        b
                    );
                }
                mismatches += 1;
            }
        }
    }
    if mismatches > 0 {
        return Err(CliError::Verification(format!(
            "{mismatches} differing entries on {} vertices",
            g.n()
        )));
    }
    println!(
        "pass: engine matches reference on {} vertices x {} graphlets",
        g.n(),
        run.net.width()
    );
    if g.n() <= 30 {
        for v in 0..g.n() {
            for (idx, id) in run.net.ids.iter().enumerate() {
                let val = run.net.get(v, idx);
                if val != 0 && id.s >= 3 {
                    println!("f({id})({}) = {val}", g.label(v as u32));
                }
            }
        }
    }
    Ok(())
}

pub fn hasse(t: u8, mode: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    let mode = parse_mode(mode)?;
    if t > 7 {
        return Err(CliError::Usage(format!("lattice bound is 7, got {t}")));
    }
    let atlas = build_atlas(t)?;
    let lat = GraphletLattice::build(&atlas, t, mode);
    eprintln!(
        "lattice over families 1..={t} ({} elements, {} covering edges, height {})",
        lat.element_count(),
        lat.covers.len(),
        lat.height()
    );
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(&path)?);
            lat.export_dot(&atlas, &mut w)?;
            eprintln!("DOT written to {}", path.display());
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            lat.export_dot(&atlas, &mut w)?;
        }
    }
    Ok(())
}
