//! Text and JSON formats.
//!
//! - Edge list: header `N <count> [bipartite <size_v1>]`, then one
//!   `m n weight` line per undirected edge. With a bipartite header the first
//!   `size_v1` vertices form `V1`. Blank lines and `#` comments are skipped.
//! - Filter: one `lambda value` line per frequency.
//! - Sampled spectrum: one-line JSON `{"k":..,"m":..,"values":[..]}`.
//! - Design: JSON `{"strategy":..,"mode":..,"h":[..],"w":[..]}`.
//! - One-branch payload: `N <n>`, `K <k>`, `generator <name> <params..>`,
//!   then `k` spectrum values, one per line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use gsamp_core::graph::{Bipartition, Graph};
use gsamp_core::recovery::{Mode, RecoveryDesign, Strategy};
use gsamp_core::sampling::{SampledSpectrum, SamplingConfig};
use gsamp_core::spectral::{Response, SpectralFilter};
use gsamp_core::DVector;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

fn content_lines<R: BufRead>(r: R) -> impl Iterator<Item = Result<(usize, String)>> {
    r.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(l) => {
            let t = l.split('#').next().unwrap_or("").trim().to_string();
            (!t.is_empty()).then_some(Ok((i + 1, t)))
        }
    })
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Format(format!("line {line}: expected {what}")))
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    write!(w, "N {}", g.n())?;
    if let Some(bp) = g.bipartition() {
        if bp.v1().iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Format("edge lists store V1 as a vertex prefix".into()));
        }
        write!(w, " bipartite {}", bp.v1().len())?;
    }
    writeln!(w)?;
    for (m, n, weight) in g.edges() {
        writeln!(w, "{m} {n} {weight}")?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph> {
    let mut lines = content_lines(r);
    let (ln, header) = lines.next().ok_or_else(|| Error::Format("empty edge list".into()))??;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("N") {
        return Err(Error::Format(format!("line {ln}: header must start with N")));
    }
    let n: usize = parse_num(toks.next(), ln, "vertex count")?;
    let bipartition = match toks.next() {
        None => None,
        Some("bipartite") => {
            let v1: usize = parse_num(toks.next(), ln, "size of V1")?;
            if v1 > n {
                return Err(Error::Format(format!("line {ln}: V1 larger than the graph")));
            }
            Some(Bipartition::new(n, (0..v1).collect(), (v1..n).collect())?)
        }
        Some(other) => return Err(Error::Format(format!("line {ln}: unexpected {other:?}"))),
    };
    let mut edges = Vec::new();
    for line in lines {
        let (ln, text) = line?;
        let mut t = text.split_whitespace();
        let m: usize = parse_num(t.next(), ln, "vertex index")?;
        let k: usize = parse_num(t.next(), ln, "vertex index")?;
        let weight: f64 = parse_num(t.next(), ln, "weight")?;
        if t.next().is_some() {
            return Err(Error::Format(format!("line {ln}: trailing tokens")));
        }
        edges.push((m, k, weight));
    }
    Ok(Graph::from_edges(n, &edges, bipartition)?)
}

pub fn save_graph(g: &Graph, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_edge_list(g, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    read_edge_list(BufReader::new(File::open(path)?))
}

/// Two-column `lambda value` text; `comment` becomes a leading `#` line.
pub fn write_filter<W: Write>(lambdas: &[f64], f: &SpectralFilter, comment: Option<&str>, mut w: W) -> Result<()> {
    if lambdas.len() != f.len() {
        return Err(Error::Format(format!("{} frequencies for {} values", lambdas.len(), f.len())));
    }
    if let Some(c) = comment {
        writeln!(w, "# {c}")?;
    }
    for (l, v) in lambdas.iter().zip(f.values()) {
        writeln!(w, "{l} {v}")?;
    }
    Ok(())
}

pub fn parse_filter<R: BufRead>(r: R) -> Result<(Vec<f64>, SpectralFilter)> {
    let mut lambdas = Vec::new();
    let mut values = Vec::new();
    for line in content_lines(r) {
        let (ln, text) = line?;
        let mut t = text.split_whitespace();
        lambdas.push(parse_num(t.next(), ln, "frequency")?);
        values.push(parse_num(t.next(), ln, "value")?);
        if t.next().is_some() {
            return Err(Error::Format(format!("line {ln}: expected two columns")));
        }
    }
    Ok((lambdas, SpectralFilter::from_values(values)?))
}

pub fn read_filter(path: &Path) -> Result<(Vec<f64>, SpectralFilter)> {
    parse_filter(BufReader::new(File::open(path)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SpectrumRecord {
    k: usize,
    m: usize,
    values: Vec<f64>,
}

pub fn spectrum_to_json(c: &SampledSpectrum<f64>) -> String {
    let cfg = c.config();
    let rec = SpectrumRecord { k: cfg.k(), m: cfg.m(), values: c.values().iter().copied().collect() };
    serde_json::to_string(&rec).expect("plain numeric record")
}

pub fn spectrum_from_json(s: &str) -> Result<SampledSpectrum<f64>> {
    let rec: SpectrumRecord = serde_json::from_str(s)?;
    let cfg = SamplingConfig::new(rec.k * rec.m, rec.m)?;
    Ok(SampledSpectrum::new(DVector::from_vec(rec.values), cfg)?)
}

pub fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Ds => "DS",
        Strategy::Ls => "LS",
        Strategy::Mx => "MX",
    }
}

pub fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Unconstrained => "unconstrained",
        Mode::Predefined => "predefined",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct DesignRecord {
    strategy: String,
    mode: String,
    h: Vec<f64>,
    w: Vec<f64>,
}

pub fn design_to_json(d: &RecoveryDesign) -> String {
    let rec = DesignRecord {
        strategy: strategy_name(d.strategy()).into(),
        mode: mode_name(d.mode()).into(),
        h: d.h().to_vec(),
        w: d.w().values().to_vec(),
    };
    serde_json::to_string_pretty(&rec).expect("plain numeric record")
}

pub fn design_from_json(s: &str) -> Result<RecoveryDesign> {
    let rec: DesignRecord = serde_json::from_str(s)?;
    let strategy = match rec.strategy.as_str() {
        "DS" => Strategy::Ds,
        "LS" => Strategy::Ls,
        "MX" => Strategy::Mx,
        other => return Err(Error::Format(format!("unknown strategy {other:?}"))),
    };
    let mode = match rec.mode.as_str() {
        "unconstrained" => Mode::Unconstrained,
        "predefined" => Mode::Predefined,
        other => return Err(Error::Format(format!("unknown mode {other:?}"))),
    };
    Ok(RecoveryDesign::new(rec.h, SpectralFilter::from_values(rec.w)?, strategy, mode)?)
}

/// Everything a receiver needs, besides the graph, to decode a one-branch
/// encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct Payload {
    pub n: usize,
    pub generator: Response,
    pub values: Vec<f64>,
}

impl Payload {
    pub fn k(&self) -> usize {
        self.values.len()
    }
}

pub fn write_payload<W: Write>(p: &Payload, mut w: W) -> Result<()> {
    writeln!(w, "N {}", p.n)?;
    writeln!(w, "K {}", p.k())?;
    write!(w, "generator {}", p.generator.name())?;
    for v in p.generator.params() {
        write!(w, " {v}")?;
    }
    writeln!(w)?;
    for v in &p.values {
        writeln!(w, "{v}")?;
    }
    Ok(())
}

pub fn read_payload<R: BufRead>(r: R) -> Result<Payload> {
    let mut lines = content_lines(r);
    let mut field = |key: &str| -> Result<(usize, Vec<String>)> {
        let (ln, text) = lines.next().ok_or_else(|| Error::Format(format!("missing {key} line")))??;
        let mut t = text.split_whitespace();
        if t.next() != Some(key) {
            return Err(Error::Format(format!("line {ln}: expected {key}")));
        }
        Ok((ln, t.map(str::to_string).collect()))
    };
    let (ln, n) = field("N")?;
    let n: usize = parse_num(n.first().map(String::as_str), ln, "N")?;
    let (ln, k) = field("K")?;
    let k: usize = parse_num(k.first().map(String::as_str), ln, "K")?;
    let (ln, gen) = field("generator")?;
    let name = gen.first().ok_or_else(|| Error::Format(format!("line {ln}: missing generator name")))?;
    let params = gen[1..]
        .iter()
        .map(|t| parse_num(Some(t), ln, "generator parameter"))
        .collect::<Result<Vec<f64>>>()?;
    let generator = Response::from_name(name, &params)?;
    let values = lines
        .map(|l| l.and_then(|(ln, t)| parse_num(Some(&t), ln, "spectrum value")))
        .collect::<Result<Vec<f64>>>()?;
    if values.len() != k {
        return Err(Error::Format(format!("payload declares K = {k} but holds {} values", values.len())));
    }
    Ok(Payload { n, generator, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gsamp_core::graph::{complete_bipartite, gen_random_sensor};

    #[test]
    fn edge_list_round_trip() {
        for g in [gen_random_sensor(20, 4).unwrap(), complete_bipartite(3, 3).unwrap()] {
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).unwrap();
            assert_eq!(read_edge_list(buf.as_slice()).unwrap(), g);
        }
    }

    #[test]
    fn edge_list_errors() {
        assert!(read_edge_list("".as_bytes()).is_err());
        assert!(read_edge_list("M 3\n".as_bytes()).is_err());
        assert!(read_edge_list("N 3\n0 1\n".as_bytes()).is_err());
        assert!(read_edge_list("N 3\n0 5 1\n".as_bytes()).is_err());
        assert!(read_edge_list("N 4 bipartite 2\n0 1 1\n".as_bytes()).is_err());
        let g = read_edge_list("# comment\nN 3\n0 1 0.5 # edge\n\n1 2 2\n".as_bytes()).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn filter_round_trip() {
        let f = SpectralFilter::from_values(vec![1.0, 0.25, -3.5]).unwrap();
        let lambdas = [0.0, 0.1, 2.0];
        let mut buf = Vec::new();
        write_filter(&lambdas, &f, Some("test"), &mut buf).unwrap();
        let (l, g) = parse_filter(buf.as_slice()).unwrap();
        assert_eq!(l, lambdas);
        assert_eq!(g.values(), f.values());
    }

    #[test]
    fn spectrum_and_design_round_trip() {
        let cfg = SamplingConfig::new(6, 3).unwrap();
        let c = SampledSpectrum::new(DVector::from_vec(vec![1.0, -0.5]), cfg).unwrap();
        let s = spectrum_to_json(&c);
        assert!(!s.contains('\n'));
        assert_eq!(spectrum_from_json(&s).unwrap(), c);

        let w = SpectralFilter::from_values(vec![1.0; 6]).unwrap();
        let d = RecoveryDesign::new(vec![0.5, 2.0], w, Strategy::Ls, Mode::Predefined).unwrap();
        assert_eq!(design_from_json(&design_to_json(&d)).unwrap(), d);
        assert!(design_from_json("{\"strategy\":\"XX\",\"mode\":\"predefined\",\"h\":[1],\"w\":[1]}").is_err());
    }

    #[test]
    fn payload_round_trip() {
        let p = Payload {
            n: 8,
            generator: Response::BipartiteRecovery { lambda_max: 2.0 },
            values: vec![0.5, -1.25, 3.0, 1e-17],
        };
        let mut buf = Vec::new();
        write_payload(&p, &mut buf).unwrap();
        assert_eq!(read_payload(buf.as_slice()).unwrap(), p);
        let short = "N 8\nK 4\ngenerator g_ir 2\n1\n";
        assert!(read_payload(short.as_bytes()).is_err());
    }
}
