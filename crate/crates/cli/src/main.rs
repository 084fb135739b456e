//! `blpack` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage, I/O or parse errors.

use anyhow::Context;
use blpack::hole::Hole;
use blpack::io::{
    generate, parse_instance, parse_packing, parse_packing_prefix, serialize_instance, serialize_packing, Family,
    GeneratorSpec, Instance,
};
use blpack::oracle::{extract_holes, oracle_pack, validate_bl_stability, validate_packing, OracleMode};
use blpack::packer::{bench_only::pack_flawed, pack_with, PackReport, SearchMode};
use blpack::render::render_svg;
use blpack::Packing;
use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "blpack", version, about = "Bottom-Left strip packing with hole maintenance")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pack an instance with the BL heuristic and write the packing.
    Pack {
        instance: PathBuf,
        out: PathBuf,
        /// Append one `#` line of search statistics per placement.
        #[arg(long)]
        trace: bool,
        /// Search holes one after another instead of on the thread pool.
        #[arg(long)]
        sequential: bool,
    },
    /// Check that a packing is feasible for an instance.
    Verify {
        instance: PathBuf,
        packing: PathBuf,
        /// Also require every rectangle to be BL-stable.
        #[arg(long)]
        stability: bool,
    },
    /// Pack with the hole store and with the brute-force oracle and compare.
    OracleCompare {
        instance: PathBuf,
        /// Use the exhaustive grid oracle instead of the candidate oracle.
        #[arg(long)]
        full_grid: bool,
        /// Move the first rectangle before comparing; exercises the mismatch path.
        #[arg(long, hide = true)]
        inject_mismatch: bool,
    },
    /// Edge visits and wall time per size, as CSV.
    Bench {
        family: FamilyArg,
        /// Comma-separated sizes, e.g. 128,256,512,1024.
        #[arg(value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Also run the flawed per-hole search on the same instances.
        #[arg(long)]
        flawed: bool,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Draw a packing as SVG.
    Render {
        instance: PathBuf,
        packing: PathBuf,
        svg: PathBuf,
        /// Outline the holes of the packing.
        #[arg(long)]
        holes: bool,
    },
    /// Dump the holes of a (possibly partial) packing with their edge labels.
    Holes { instance: PathBuf, packing: PathBuf },
    /// Write a generated instance.
    Generate {
        family: FamilyArg,
        #[arg(long, default_value_t = 40)]
        n: usize,
        #[command(flatten)]
        gen: GenArgs,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Random,
    Decreasing,
    Staircase,
    BlsFixture,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    strip_width: i64,
    #[arg(long, default_value_t = 10)]
    max_dim: i64,
}

impl GenArgs {
    fn instance(&self, family: FamilyArg, n: usize) -> anyhow::Result<Instance> {
        let (strip_width, max_dim) = (self.strip_width, self.max_dim);
        let family = match family {
            FamilyArg::Random => Family::Random { n, strip_width, max_dim },
            FamilyArg::Decreasing => Family::DecreasingWidth { n, strip_width, max_dim },
            FamilyArg::Staircase => Family::StaircaseFlaw { n },
            FamilyArg::BlsFixture => Family::BlsFixture,
        };
        Ok(generate(&GeneratorSpec { family, seed: self.seed })?)
    }
}

/// A failed check, as opposed to bad input.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn fail(msg: impl Into<String>) -> anyhow::Error {
    CheckFailed(msg.into()).into()
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_instance(path: &Path) -> anyhow::Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_packing(path: &Path, inst: &Instance) -> anyhow::Result<Packing> {
    parse_packing(&read(path)?, inst).with_context(|| format!("parsing {}", path.display()))
}

fn ceiling(inst: &Instance) -> i64 {
    inst.rects.iter().map(|r| r.h).sum()
}

fn mode(sequential: bool) -> SearchMode {
    if sequential {
        SearchMode::Sequential
    } else {
        SearchMode::Parallel
    }
}

fn cmd_pack(instance: &Path, out: &Path, trace: bool, sequential: bool) -> anyhow::Result<()> {
    let inst = load_instance(instance)?;
    let rep = pack_with(&inst, mode(sequential))?;
    let mut text = serialize_packing(&rep.packing);
    if trace {
        text.push_str("# i x y holes_examined edges_visited candidates live_holes live_vertices\n");
        for (i, s) in rep.placements.iter().enumerate() {
            let _ = writeln!(
                text,
                "# {i} {} {} {} {} {} {} {}",
                s.at.x, s.at.y, s.holes_examined, s.edges_visited, s.candidates, s.live_holes, s.live_vertices
            );
        }
    }
    write(out, &text)
}

fn cmd_verify(instance: &Path, packing: &Path, stability: bool) -> anyhow::Result<()> {
    let inst = load_instance(instance)?;
    let pk = load_packing(packing, &inst)?;
    validate_packing(&pk).map_err(|e| fail(format!("infeasible: {e}")))?;
    if stability {
        validate_bl_stability(&pk).map_err(|e| fail(format!("not BL-stable: {e}")))?;
    }
    println!("ok");
    Ok(())
}

fn cmd_oracle_compare(instance: &Path, full_grid: bool, inject: bool) -> anyhow::Result<()> {
    let inst = load_instance(instance)?;
    let mut got = pack_with(&inst, SearchMode::Sequential)?.packing;
    if inject {
        if let Some(p) = got.slots[0].as_mut() {
            p.origin.y += 1;
        }
    }
    let want = oracle_pack(
        inst.strip_width,
        &inst.rects,
        if full_grid { OracleMode::FullGrid } else { OracleMode::Candidates },
    );
    match (0..inst.n()).find(|&i| got.slots[i] != want.slots[i]) {
        None => {
            println!("ok: {} placements agree", inst.n());
            Ok(())
        }
        Some(i) => {
            let at = |p: &Option<blpack::Placement>| p.map(|p| p.origin.to_string()).unwrap_or_else(|| "-".into());
            Err(fail(format!("rectangle {i}: packer {}, oracle {}", at(&got.slots[i]), at(&want.slots[i]))))
        }
    }
}

fn bench_row(n: usize, rep: &PackReport) -> String {
    format!("{n},{},{:.3}", rep.total_visits(), rep.wall.as_secs_f64() * 1e3)
}

fn cmd_bench(family: FamilyArg, sizes: &[usize], flawed: bool, gen: &GenArgs) -> anyhow::Result<()> {
    let instances: Vec<(usize, Instance)> =
        sizes.iter().map(|&n| Ok((n, gen.instance(family, n)?))).collect::<anyhow::Result<_>>()?;
    println!("n,total_edge_visits,wall_ms");
    for (n, inst) in &instances {
        println!("{}", bench_row(*n, &pack_with(inst, SearchMode::Parallel)?));
    }
    if flawed {
        println!("# flawed");
        println!("n,total_edge_visits,wall_ms");
        for (n, inst) in &instances {
            println!("{}", bench_row(*n, &pack_flawed(inst, SearchMode::Parallel)?));
        }
    }
    Ok(())
}

fn cmd_render(instance: &Path, packing: &Path, svg: &Path, holes: bool) -> anyhow::Result<()> {
    let inst = load_instance(instance)?;
    let pk = parse_packing_prefix(&read(packing)?, &inst).with_context(|| format!("parsing {}", packing.display()))?;
    let outlines = if holes { extract_holes(&pk, ceiling(&inst))? } else { Vec::new() };
    write(svg, &render_svg(&pk, &outlines))
}

fn labels(h: &Hole) -> String {
    let Ok(o) = h.canonical_ordering() else {
        return "# not a BLS-hole\n".into();
    };
    let edge = |i: usize| {
        let e = h.edge(i);
        format!("{}-{}", e.from, e.to)
    };
    let mut s = format!("# k={}\n", o.leftmost.len());
    for (i, &l) in o.leftmost.iter().enumerate() {
        let _ = writeln!(s, "# L{} {}", i + 1, edge(l));
    }
    for (i, &n) in o.notches.iter().enumerate() {
        let _ = writeln!(s, "# N{} {}", i + 2, edge(n));
    }
    let _ = writeln!(s, "# R {}", edge(o.rightmost));
    if let Some(c) = o.falling_corner {
        let _ = writeln!(s, "# c_f {}", h.vertex(c));
    }
    s
}

fn cmd_holes(instance: &Path, packing: &Path) -> anyhow::Result<()> {
    let inst = load_instance(instance)?;
    let pk = parse_packing_prefix(&read(packing)?, &inst).with_context(|| format!("parsing {}", packing.display()))?;
    let mut holes = extract_holes(&pk, ceiling(&inst))?;
    holes.sort_by_key(|h| {
        let (lo, _) = h.bbox();
        (lo.y, lo.x)
    });
    let mut out = String::new();
    for (i, h) in holes.iter().enumerate() {
        let _ = writeln!(out, "# hole {i} nv={}", h.nv());
        out.push_str(&labels(h));
        out.push_str(&h.dump());
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Pack { instance, out, trace, sequential } => cmd_pack(&instance, &out, trace, sequential),
        Cmd::Verify { instance, packing, stability } => cmd_verify(&instance, &packing, stability),
        Cmd::OracleCompare { instance, full_grid, inject_mismatch } => {
            cmd_oracle_compare(&instance, full_grid, inject_mismatch)
        }
        Cmd::Bench { family, sizes, flawed, gen } => cmd_bench(family, &sizes, flawed, &gen),
        Cmd::Render { instance, packing, svg, holes } => cmd_render(&instance, &packing, &svg, holes),
        Cmd::Holes { instance, packing } => cmd_holes(&instance, &packing),
        Cmd::Generate { family, n, gen, out } => {
            let text = serialize_instance(&gen.instance(family, n)?);
            match out {
                Some(p) => write(&p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<CheckFailed>() => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn failed_checks_are_distinguished() {
        assert!(fail("x").is::<CheckFailed>());
        assert!(!anyhow::anyhow!("x").is::<CheckFailed>());
    }
}
