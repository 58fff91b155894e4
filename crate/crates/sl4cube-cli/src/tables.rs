//! Deterministic CSV tables with exact values.

use sl4cube::cube::{enumerate_triples, Hypercube};
use sl4cube::exact::format_rational;
use sl4cube::polyspace::enumerate_profiles;
use sl4cube::specialfn::{self, TransitionKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    Transition,
    Krawtchouk,
    Dims,
    Wedderburn,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn build(kind: TableKind, n: u32) -> anyhow::Result<Table> {
    Ok(match kind {
        TableKind::Transition => transition(n),
        TableKind::Krawtchouk => krawtchouk(n),
        TableKind::Dims => dims(n),
        TableKind::Wedderburn => wedderburn(n)?,
    })
}

fn transition(n: u32) -> Table {
    let rows = TransitionKey::all(n)
        .iter()
        .map(|k| {
            let v = specialfn::calp_sum(k);
            let mut row = vec![n.to_string()];
            row.extend(k.tail.iter().chain(&k.star_tail).map(u32::to_string));
            row.push(v.numer().to_string());
            row.push(v.denom().to_string());
            row
        })
        .collect();
    Table {
        header: vec![
            "N",
            "s",
            "t",
            "u",
            "S",
            "T",
            "U",
            "P_value_num",
            "P_value_den",
        ],
        rows,
    }
}

/// Coefficients of f_0..f_{N+1}, lowest degree first.
fn krawtchouk(n: u32) -> Table {
    let fam = specialfn::krawtchouk(n);
    let rows = fam
        .polys
        .iter()
        .enumerate()
        .flat_map(|(k, p)| {
            p.iter().enumerate().map(move |(d, c)| {
                vec![
                    n.to_string(),
                    k.to_string(),
                    d.to_string(),
                    format_rational(c),
                ]
            })
        })
        .collect();
    Table {
        header: vec!["N", "k", "degree", "coefficient"],
        rows,
    }
}

/// dim P_N = |𝒫_N| and dim T = |𝒫''_N| for every N up to `n`.
fn dims(n: u32) -> Table {
    let rows = (0..=n)
        .map(|m| {
            vec![
                m.to_string(),
                enumerate_profiles(m).len().to_string(),
                enumerate_triples(m).len().to_string(),
            ]
        })
        .collect();
    Table {
        header: vec!["N", "dim_P", "dim_T"],
        rows,
    }
}

/// Computed Wedderburn ideals of T at the basepoint 0.
fn wedderburn(n: u32) -> anyhow::Result<Table> {
    let t = Hypercube::new(n).t_algebra(0);
    let rows = t
        .wedderburn()
        .map_err(anyhow::Error::msg)?
        .iter()
        .map(|w| {
            vec![
                w.ell.to_string(),
                format_rational(&w.eigenvalue),
                w.basis.len().to_string(),
            ]
        })
        .collect();
    Ok(Table {
        header: vec!["ell", "eigenvalue", "dim"],
        rows,
    })
}

pub fn write_csv(table: &Table, out: impl std::io::Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}
