use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sl3web::arrangement::{Web, WebVertex};
use sl3web::montecarlo::CensusResult;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (", env!("SL3WEB_GIT_DESCRIBE"), ")");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub git: String,
    pub command: String,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
}

impl Manifest {
    pub fn new(command: &str, config: serde_json::Value, seed: Option<u64>) -> Manifest {
        Manifest {
            tool: "sl3web".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            git: env!("SL3WEB_GIT_DESCRIBE").into(),
            command: command.into(),
            seed,
            config,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    manifest: &'a Manifest,
    result: &'a T,
}

/// Output file or stdout. A file gets a `.manifest.json` sidecar.
pub struct Sink {
    out: Option<PathBuf>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Sink {
        Sink { out }
    }

    fn write(&self, body: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
            None => {
                let mut out = std::io::stdout().lock();
                match out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    r => r.context("writing to stdout"),
                }
            }
        }
    }

    fn sidecar(&self, manifest: &Manifest) -> Result<()> {
        if let Some(p) = &self.out {
            let mut name = p.as_os_str().to_owned();
            name.push(".manifest.json");
            let side = PathBuf::from(name);
            fs::write(&side, serde_json::to_string_pretty(manifest)? + "\n").with_context(|| format!("writing {}", side.display()))?;
        }
        Ok(())
    }

    pub fn json<T: Serialize>(&self, manifest: &Manifest, result: &T) -> Result<()> {
        self.write(&(serde_json::to_string_pretty(&Envelope { manifest, result })? + "\n"))?;
        self.sidecar(manifest)
    }

    pub fn text(&self, body: &str, manifest: Option<&Manifest>) -> Result<()> {
        self.write(body)?;
        match manifest {
            Some(m) => self.sidecar(m),
            None => Ok(()),
        }
    }
}

/// Reads a `result` envelope or a bare value.
pub fn read_result<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let inner = match v {
        serde_json::Value::Object(mut m) if m.contains_key("result") && m.contains_key("manifest") => m.remove("result").unwrap(),
        other => other,
    };
    serde_json::from_value(inner).with_context(|| format!("unexpected contents in {}", path.display()))
}

pub fn census_csv(c: &CensusResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["table", "size", "depth", "face_type", "count", "sum_sq"])?;
    for cell in &c.size_depth {
        w.write_record(["size_depth", &cell.size.to_string(), &cell.depth.to_string(), "", &cell.count.to_string(), ""])?;
    }
    for t in &c.types {
        w.write_record(["type", "", "", &t.face_type.to_string(), &t.count.to_string(), &t.sum_sq.to_string()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Serialize)]
struct VertexView {
    kind: &'static str,
    index: usize,
}

pub fn web_view(web: &Web) -> serde_json::Value {
    let vertices: Vec<VertexView> = web
        .vertices()
        .iter()
        .map(|v| match *v {
            WebVertex::Boundary(t) => VertexView { kind: "boundary", index: t as usize },
            WebVertex::Y(m) => VertexView { kind: "y", index: m },
            WebVertex::Sink(c) => VertexView { kind: "sink", index: c },
            WebVertex::Source(c) => VertexView { kind: "source", index: c },
        })
        .collect();
    serde_json::json!({
        "n": web.n(),
        "vertices": vertices,
        "edges": web.edges(),
        "faces": web.faces(),
    })
}
