use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Sink {
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Sink {
    /// Writes `json` in JSON mode and `rows` (flat records) in CSV mode.
    pub fn emit<J: Serialize, R: Serialize>(&self, json: &J, rows: &[R]) -> io::Result<()> {
        let mut buf = Vec::new();
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut buf, json).map_err(io::Error::other)?;
                buf.push(b'\n');
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut buf);
                for r in rows {
                    w.serialize(r).map_err(io::Error::other)?;
                }
                w.flush()?;
            }
        }
        match &self.out {
            Some(p) => File::create(p)?.write_all(&buf),
            None => io::stdout().lock().write_all(&buf),
        }
    }
}
