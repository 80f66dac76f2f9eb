use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use fraclap_core::fraclap::{apply, FracLapParams};
use fraclap_core::nls::{energy, EvolutionState, Nls, SnapshotSink};
use fraclap_core::quadrature::MidpointSamples;
use fraclap_core::reference::{error_norms, exact_erf, exact_rational_at, ErrorReport};
use fraclap_core::spectral::f_from_samples;
use fraclap_core::{Error, GridSpec, C64};
use serde::Serialize;

use crate::config::{read_samples, Format, Input, RunConfig};
use crate::error::CliError;

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn samples_of(input: &Input, g: &GridSpec) -> Result<Vec<C64>, CliError> {
    let xs = g.output_points();
    Ok(match input {
        Input::Rational => xs.iter().map(|&x| C64::new(-1.0, x) / C64::new(1.0, x)).collect(),
        Input::Erf => xs.iter().map(|&x| C64::new(libm::erf(x), 0.0)).collect(),
        Input::Gaussian => xs.iter().map(|&x| C64::new((-x * x).exp(), 0.0)).collect(),
        Input::File(path) => read_samples(path, g.n())?,
    })
}

/// Integrand samples: closed form for the rational function, pseudospectral otherwise.
fn integrand(input: &Input, g: &GridSpec) -> Result<MidpointSamples, CliError> {
    match input {
        // f = sin·u_ss + 2cos·u_s = 4L² / (iL cos s + sin s)³.
        Input::Rational => {
            let l = g.scale();
            Ok(MidpointSamples::from_fn(*g, |s| {
                C64::new(4.0 * l * l, 0.0) / C64::new(s.sin(), l * s.cos()).powi(3)
            }))
        }
        _ => Ok(f_from_samples(&samples_of(input, g)?, g)?),
    }
}

fn exact_values(input: &Input, alpha: f64, g: &GridSpec) -> Result<Option<Vec<C64>>, CliError> {
    let xs = g.output_points();
    Ok(match input {
        Input::Rational => Some(xs.iter().map(|&x| exact_rational_at(alpha, x)).collect::<Result<_, _>>()?),
        Input::Erf => Some(
            xs.iter()
                .map(|&x| exact_erf(alpha, x).map(|v| C64::new(v, 0.0)))
                .collect::<Result<_, _>>()?,
        ),
        _ => None,
    })
}

fn evaluate(input: &Input, alpha: f64, n: usize, r: usize, scale: f64) -> Result<(GridSpec, Vec<C64>), CliError> {
    let g = GridSpec::new(n, r, scale)?;
    let p = FracLapParams::new(alpha, g)?;
    let out = apply(&integrand(input, &g)?, &p)?;
    if let Some(j) = out.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(CliError::Numeric(format!("non-finite result at node {j}")));
    }
    Ok((g, out))
}

#[derive(Serialize)]
struct NodeRecord {
    j: usize,
    s: f64,
    x: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct ErrorRecord {
    l2: f64,
    linf: f64,
    #[serde(rename = "N")]
    n: usize,
    r: usize,
    alpha: f64,
}

impl ErrorRecord {
    fn new(e: &ErrorReport, r: usize, alpha: f64) -> Self {
        Self {
            l2: e.l2,
            linf: e.linf,
            n: e.n,
            r,
            alpha,
        }
    }
}

#[derive(Serialize)]
struct ApplyRecord {
    nodes: Vec<NodeRecord>,
    error: Option<ErrorRecord>,
}

pub fn cmd_apply(cfg: &RunConfig) -> Result<(), CliError> {
    let (alpha, n, r) = (cfg.alphas[0], cfg.ns[0], cfg.rs[0]);
    let (g, out) = evaluate(&cfg.input, alpha, n, r, cfg.scale)?;
    let error = match exact_values(&cfg.input, alpha, &g)? {
        Some(exact) => Some(ErrorRecord::new(&error_norms(&out, &exact)?, r, alpha)),
        None => None,
    };
    let xs = g.output_points();
    let nodes: Vec<NodeRecord> = out
        .iter()
        .enumerate()
        .map(|(j, z)| NodeRecord {
            j,
            s: g.output_node(j),
            x: xs[j],
            re: z.re,
            im: z.im,
        })
        .collect();

    let mut w = open_output(cfg.output.as_ref())?;
    match cfg.format {
        Format::Csv => {
            writeln!(w, "j,s_j,x_j,re,im")?;
            for v in &nodes {
                writeln!(w, "{},{},{},{},{}", v.j, num(v.s), num(v.x), num(v.re), num(v.im))?;
            }
            if let Some(e) = &error {
                writeln!(w)?;
                writeln!(w, "l2,linf,N,r,alpha")?;
                writeln!(w, "{},{},{},{},{}", num(e.l2), num(e.linf), e.n, e.r, num(e.alpha))?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut w, &ApplyRecord { nodes, error }).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SweepRow {
    alpha: f64,
    #[serde(rename = "N")]
    n: usize,
    r: usize,
    l2: f64,
    linf: f64,
    runtime_ms: f64,
    /// `log2(E(N, r) / E(N, 2r))`.
    #[serde(skip_serializing_if = "Option::is_none")]
    order_r: Option<f64>,
    /// `log2(E(N, r) / E(2N, r))`.
    #[serde(rename = "order_N", skip_serializing_if = "Option::is_none")]
    order_n: Option<f64>,
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &alpha in &cfg.alphas {
        for &n in &cfg.ns {
            for &r in &cfg.rs {
                let start = Instant::now();
                let (g, out) = evaluate(&cfg.input, alpha, n, r, cfg.scale)?;
                let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
                let exact = exact_values(&cfg.input, alpha, &g)?.expect("sweep inputs have exact solutions");
                let e = error_norms(&out, &exact)?;
                rows.push(SweepRow {
                    alpha,
                    n,
                    r,
                    l2: e.l2,
                    linf: e.linf,
                    runtime_ms,
                    order_r: None,
                    order_n: None,
                });
            }
        }
    }
    let find = |rows: &[SweepRow], alpha: f64, n: usize, r: usize| {
        rows.iter().find(|x| x.alpha == alpha && x.n == n && x.r == r).map(|x| x.l2)
    };
    let with_r = cfg.rs.len() > 1;
    let with_n = cfg.ns.len() > 1;
    for i in 0..rows.len() {
        let (alpha, n, r, e) = (rows[i].alpha, rows[i].n, rows[i].r, rows[i].l2);
        let order = |next: Option<f64>| next.map(|f| (e / f).log2());
        rows[i].order_r = if with_r { order(find(&rows, alpha, n, 2 * r)) } else { None };
        rows[i].order_n = if with_n { order(find(&rows, alpha, 2 * n, r)) } else { None };
    }

    let mut w = open_output(cfg.output.as_ref())?;
    match cfg.format {
        Format::Csv => {
            let mut header = String::from("alpha,N,r,l2,linf,runtime_ms");
            if with_r {
                header.push_str(",order_r");
            }
            if with_n {
                header.push_str(",order_N");
            }
            writeln!(w, "{header}")?;
            let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
            for row in &rows {
                write!(w, "{},{},{},{},{},{:.3}", num(row.alpha), row.n, row.r, num(row.l2), num(row.linf), row.runtime_ms)?;
                if with_r {
                    write!(w, ",{}", opt(row.order_r))?;
                }
                if with_n {
                    write!(w, ",{}", opt(row.order_n))?;
                }
                writeln!(w)?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut w, &rows).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes `energy.csv`, `snapshots.csv` (index) and one `snapshot_NNNNN.csv` per snapshot.
struct DirSink {
    dir: PathBuf,
    xs: Vec<f64>,
    energy: BufWriter<File>,
    index: BufWriter<File>,
    m0: Option<f64>,
    count: usize,
}

fn sink_err(e: io::Error) -> Error {
    Error::Sink(e.to_string())
}

impl DirSink {
    fn create(dir: &Path, g: &GridSpec) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut energy = BufWriter::new(File::create(dir.join("energy.csv"))?);
        writeln!(energy, "t,M,drift")?;
        let mut index = BufWriter::new(File::create(dir.join("snapshots.csv"))?);
        writeln!(index, "t,M,file")?;
        Ok(Self {
            dir: dir.to_path_buf(),
            xs: g.output_points(),
            energy,
            index,
            m0: None,
            count: 0,
        })
    }

    fn flush(&mut self) -> io::Result<()> {
        self.energy.flush()?;
        self.index.flush()
    }
}

impl SnapshotSink for DirSink {
    fn record_energy(&mut self, t: f64, m: f64) -> fraclap_core::Result<()> {
        let m0 = *self.m0.get_or_insert(m);
        writeln!(self.energy, "{},{},{}", num(t), num(m), num((m - m0).abs())).map_err(sink_err)
    }

    fn snapshot(&mut self, t: f64, psi: &[C64], m: f64) -> fraclap_core::Result<()> {
        let name = format!("snapshot_{:05}.csv", self.count);
        self.count += 1;
        let mut w = BufWriter::new(File::create(self.dir.join(&name)).map_err(sink_err)?);
        writeln!(w, "j,x_j,re,im,abs").map_err(sink_err)?;
        for (j, z) in psi.iter().enumerate() {
            writeln!(w, "{j},{},{},{},{}", num(self.xs[j]), num(z.re), num(z.im), num(z.norm())).map_err(sink_err)?;
        }
        w.flush().map_err(sink_err)?;
        writeln!(self.index, "{},{},{name}", num(t), num(m)).map_err(sink_err)
    }
}

pub fn cmd_nls(cfg: &RunConfig) -> Result<(), CliError> {
    let g = GridSpec::new(cfg.ns[0], cfg.rs[0], cfg.scale)?;
    let p = FracLapParams::new(cfg.alphas[0], g)?;
    let psi0 = samples_of(&cfg.input, &g)?;
    let dir = cfg.output.as_ref().expect("validated");
    let mut sink = DirSink::create(dir, &g)?;

    let result = if cfg.t_end == 0.0 {
        let state = EvolutionState::new(psi0, p, cfg.dt)?;
        let m0 = energy(&state);
        sink.record_energy(0.0, m0).and_then(|_| sink.snapshot(0.0, &state.psi, m0))
    } else {
        Nls::new(p)?
            .simulate(psi0, cfg.dt, cfg.t_end, cfg.snapshot_every, &mut sink)
            .map(|_| ())
    };
    // Keep the log written so far, also after a blow-up.
    sink.flush()?;
    Ok(result?)
}
