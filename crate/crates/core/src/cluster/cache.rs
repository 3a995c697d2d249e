//! Exchange-graph cache: a magic header followed by length-prefixed UTF-8 records.

use std::collections::HashMap;
use std::io::{self, Read, Write};

use super::explore::{ExchangeGraph, Exploration, ExploreStats, SeedRecord};
use super::registry::VarRecord;
use super::{ClusterError, ExtMatrix, Seed, VariableRegistry};
use crate::algebra::{LaurentPoly, VarId};

pub const MAGIC: &[u8; 16] = b"GRASCLUSTER\0v001";

fn put(w: &mut impl Write, rec: &str) -> io::Result<()> {
    w.write_all(&(rec.len() as u32).to_le_bytes())?;
    w.write_all(rec.as_bytes())
}

fn bad(msg: impl Into<String>) -> ClusterError {
    ClusterError::CacheFormat(msg.into())
}

pub fn write_cache(
    w: &mut impl Write,
    n: usize,
    registry: &VariableRegistry,
    exp: &Exploration,
) -> Result<(), ClusterError> {
    w.write_all(MAGIC)?;
    put(w, &format!("n {n}"))?;
    put(w, &format!("closed {}", exp.closed))?;
    for r in registry.records() {
        put(
            w,
            &format!(
                "var {}\t{}\t{},{}\t{}",
                r.id,
                u8::from(r.initial),
                r.fp[0],
                r.fp[1],
                r.poly.to_text()
            ),
        )?;
    }
    for (i, rec) in exp.graph.seeds.iter().enumerate() {
        let m = &rec.seed.matrix;
        let labels: Vec<String> = m.row_labels().iter().map(|v| v.to_string()).collect();
        let entries: Vec<String> = m.entries().iter().map(|v| v.to_string()).collect();
        let edges: Vec<String> = exp.graph.edges[i]
            .iter()
            .map(|e| e.map_or("-".to_string(), |x| x.to_string()))
            .collect();
        put(
            w,
            &format!(
                "seed {}\t{}\t{}\t{}\t{}",
                rec.depth,
                labels.join(" "),
                m.ncols(),
                entries.join(" "),
                edges.join(" ")
            ),
        )?;
    }
    Ok(())
}

pub fn read_cache(r: &mut impl Read) -> Result<(usize, VariableRegistry, Exploration), ClusterError> {
    let mut magic = [0u8; 16];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(bad("bad magic"));
    }
    let mut n = 0usize;
    let mut closed = false;
    let mut vars: Vec<VarRecord> = Vec::new();
    let mut graph = ExchangeGraph::default();
    loop {
        let mut len = [0u8; 4];
        match r.read_exact(&mut len) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => break,
            Err(e) => return Err(e.into()),
        }
        let mut buf = vec![0u8; u32::from_le_bytes(len) as usize];
        r.read_exact(&mut buf)?;
        let rec = String::from_utf8(buf).map_err(|_| bad("record is not UTF-8"))?;
        let (tag, body) = rec.split_once(' ').ok_or_else(|| bad("untagged record"))?;
        match tag {
            "n" => n = body.parse().map_err(|_| bad("n"))?,
            "closed" => closed = body == "true",
            "var" => {
                let f: Vec<&str> = body.splitn(4, '\t').collect();
                if f.len() != 4 {
                    return Err(bad("var record"));
                }
                let id = VarId::parse(f[0], n).map_err(|e| bad(e.to_string()))?;
                let (a, b) = f[2].split_once(',').ok_or_else(|| bad("fingerprint"))?;
                let fp = [
                    a.parse().map_err(|_| bad("fingerprint"))?,
                    b.parse().map_err(|_| bad("fingerprint"))?,
                ];
                let poly = LaurentPoly::parse(f[3], n).map_err(|e| bad(e.to_string()))?;
                vars.push(VarRecord {
                    id,
                    poly,
                    fp,
                    initial: f[1] == "1",
                });
            }
            "seed" => {
                let f: Vec<&str> = body.split('\t').collect();
                if f.len() != 5 {
                    return Err(bad("seed record"));
                }
                let depth = f[0].parse().map_err(|_| bad("depth"))?;
                let rows = f[1]
                    .split(' ')
                    .map(|s| VarId::parse(s, n))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| bad(e.to_string()))?;
                let ncols: usize = f[2].parse().map_err(|_| bad("ncols"))?;
                let entries = f[3]
                    .split(' ')
                    .map(|s| s.parse::<i32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad("entries"))?;
                if entries.len() != rows.len() * ncols {
                    return Err(bad("matrix shape"));
                }
                let edges = f[4]
                    .split(' ')
                    .map(|s| if s == "-" { Ok(None) } else { s.parse().map(Some) })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad("edges"))?;
                let seed = Seed::new(ExtMatrix::new(rows, ncols, entries));
                graph.index.insert(seed.key(), graph.seeds.len());
                graph.seeds.push(SeedRecord { seed, depth });
                graph.edges.push(edges);
            }
            other => return Err(bad(format!("unknown record {other}"))),
        }
    }
    let registry = VariableRegistry::from_records(vars);
    Ok((
        n,
        registry,
        Exploration {
            graph,
            closed,
            stats: ExploreStats::default(),
        },
    ))
}

impl VariableRegistry {
    /// Rebuilds a registry from stored records (initial ones first, as written).
    pub fn from_records(records: Vec<VarRecord>) -> VariableRegistry {
        let (init, rest): (Vec<VarRecord>, Vec<VarRecord>) =
            records.into_iter().partition(|r| r.initial);
        let mut reg = VariableRegistry::new(init.iter().map(|r| (r.id, r.fp)).collect());
        for r in rest {
            reg.push_record(r);
        }
        reg
    }

    /// Canonical text of every registered polynomial, keyed by id.
    pub fn canonical_forms(&self) -> HashMap<VarId, String> {
        self.records()
            .iter()
            .map(|r| (r.id, r.poly.to_text()))
            .collect()
    }
}
