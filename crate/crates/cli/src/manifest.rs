//! Run manifests: plain `key=value` lines naming the subcommand, its
//! arguments, digests of every input and output, counts and wall time.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Manifest {
    lines: Vec<(String, String)>,
    inputs: usize,
    outputs: usize,
    started: Instant,
}

impl Manifest {
    pub fn new(subcommand: &str, arguments: &[String]) -> Self {
        Manifest {
            lines: vec![
                ("subcommand".into(), subcommand.into()),
                ("arguments".into(), arguments.join(" ")),
                ("threads".into(), rayon::current_num_threads().to_string()),
            ],
            inputs: 0,
            outputs: 0,
            started: Instant::now(),
        }
    }

    pub fn input(&mut self, label: &str, digest: &str) {
        self.lines.push((format!("input.{}", self.inputs), format!("{label} sha256:{digest}")));
        self.inputs += 1;
    }

    /// Records an output file by hashing its current contents.
    pub fn output(&mut self, path: &Path) -> Result<()> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.lines.push((
            format!("output.{}", self.outputs),
            format!("{} sha256:{}", path.display(), sha256_hex(&bytes)),
        ));
        self.outputs += 1;
        Ok(())
    }

    pub fn count(&mut self, key: &str, value: impl ToString) {
        self.field(&format!("count.{key}"), value);
    }

    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.lines {
            s.push_str(&format!("{k}={v}\n"));
        }
        s.push_str(&format!("wall_time_ms={}\n", self.started.elapsed().as_millis()));
        s
    }

    /// Writes to `path`, or to stderr when no path is given.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        let text = self.render();
        match path {
            Some(p) => fs::write(p, text).with_context(|| format!("writing manifest {}", p.display())),
            None => {
                let mut err = std::io::stderr().lock();
                writeln!(err, "# manifest")?;
                err.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}
