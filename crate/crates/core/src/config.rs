//! Run configuration shared by the command-line front end and tests.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qls::ShapeData;
use crate::rootsys::CartanType;
use crate::weyl::ParabolicJ;

pub const DEFAULT_NODE_CAP: usize = 100_000;
pub const NODE_CAP_ENV: &str = "QLS_NODE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Dot,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::Parse(format!("unknown output format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub cartan_type: CartanType,
    /// Fundamental-weight coordinates of the shape, when one is needed.
    pub weight: Option<Vec<i64>>,
    pub parabolic: Vec<usize>,
    pub node_cap: usize,
    pub output_format: OutputFormat,
}

/// Parse `"1,0,2"`; the empty string is the empty list.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad list entry {p:?}"))))
        .collect()
}

impl Config {
    /// `node_cap` falls back to `QLS_NODE_CAP`, then to the default.
    pub fn new(
        cartan_type: &str,
        weight: Option<&str>,
        parabolic: Option<&str>,
        node_cap: Option<usize>,
        output_format: &str,
    ) -> Result<Self> {
        let cartan_type: CartanType = cartan_type.parse()?;
        let rank = cartan_type.rank();
        let weight = weight.map(parse_list::<i64>).transpose()?;
        if let Some(w) = &weight {
            if w.len() != rank {
                return Err(Error::Parse(format!(
                    "weight has {} coordinates, {cartan_type} needs {rank}",
                    w.len()
                )));
            }
        }
        let parabolic = parabolic.map(parse_list::<usize>).transpose()?.unwrap_or_default();
        ParabolicJ::new(rank, parabolic.iter().copied())?;
        let node_cap = match node_cap {
            Some(c) => c,
            None => match std::env::var(NODE_CAP_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{NODE_CAP_ENV}={v:?} is not a count")))?,
                Err(_) => DEFAULT_NODE_CAP,
            },
        };
        Ok(Config {
            cartan_type,
            weight,
            parabolic,
            node_cap,
            output_format: output_format.parse()?,
        })
    }

    pub fn parabolic_set(&self) -> ParabolicJ {
        ParabolicJ::new(self.cartan_type.rank(), self.parabolic.iter().copied()).expect("validated")
    }

    pub fn shape(&self) -> Result<ShapeData> {
        let w = self
            .weight
            .as_ref()
            .ok_or_else(|| Error::Parse("a weight is required".into()))?;
        ShapeData::from_type(self.cartan_type, w)
    }
}
