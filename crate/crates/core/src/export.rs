//! Plain-text artifact formats.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::codes::FunctionalCode;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::proj::ProjPoint;

/// `# n=.. p=.. e=.. modulus=..`, a column header, then one point per row.
pub fn write_points_csv<W: Write>(ctx: &FieldCtx, n: usize, pts: &[ProjPoint], mut w: W) -> io::Result<()> {
    writeln!(
        w,
        "# n={} p={} e={} modulus={}",
        n,
        ctx.p(),
        ctx.e(),
        modulus_token(ctx)
    )?;
    let header: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    writeln!(w, "{}", header.join(","))?;
    for x in pts {
        writeln!(w, "{}", join(&x.codes(), ","))?;
    }
    Ok(())
}

/// Header `n d p e modulus m k`, then k rows of m element codes.
pub fn write_generator<W: Write>(ctx: &FieldCtx, code: &FunctionalCode, mut w: W) -> io::Result<()> {
    let g = &code.generator;
    writeln!(
        w,
        "{} {} {} {} {} {} {}",
        code.n,
        code.d,
        ctx.p(),
        ctx.e(),
        modulus_token(ctx),
        g.cols(),
        g.rows()
    )?;
    for i in 0..g.rows() {
        let row: Vec<u32> = g.row(i).iter().map(|c| c.code()).collect();
        writeln!(w, "{}", join(&row, " "))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorFile {
    pub n: usize,
    pub d: u32,
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub rows: Vec<Vec<u32>>,
}

pub fn read_generator(text: &str) -> Result<GeneratorFile> {
    let bad = |msg: &str| Error::Parse(format!("generator file: {msg}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split_whitespace().collect();
    if header.len() != 7 {
        return Err(bad("header needs 7 fields"));
    }
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad(&format!("`{s}` is not a number")));
    let modulus = header[4]
        .split(',')
        .map(|c| num(c).map(|v| v as u32))
        .collect::<Result<Vec<_>>>()?;
    let (m, k) = (num(header[5])? as usize, num(header[6])? as usize);
    let rows = lines
        .map(|l| {
            l.split_whitespace()
                .map(|c| num(c).map(|v| v as u32))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != k || rows.iter().any(|r| r.len() != m) {
        return Err(bad("row count or width disagrees with the header"));
    }
    Ok(GeneratorFile {
        n: num(header[0])? as usize,
        d: num(header[1])? as u32,
        p: num(header[2])? as u32,
        e: num(header[3])? as u32,
        modulus,
        rows,
    })
}

/// `weight,count` rows in increasing weight.
pub fn write_weights_csv<W: Write>(dist: &BTreeMap<usize, u128>, mut w: W) -> io::Result<()> {
    writeln!(w, "weight,count")?;
    for (weight, count) in dist {
        writeln!(w, "{weight},{count}")?;
    }
    Ok(())
}

fn modulus_token(ctx: &FieldCtx) -> String {
    join(ctx.modulus(), ",")
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}
