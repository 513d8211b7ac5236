use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    Csv,
    /// Aligned plain-text columns.
    Table,
}

/// A record with a fixed column layout.
pub trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn write_rows<R: Row>(rows: &[R], format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in rows {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            writeln!(out, "{}", R::header().join(","))?;
            for r in rows {
                writeln!(out, "{}", r.cells().join(","))?;
            }
        }
        Format::Table => {
            let body: Vec<Vec<String>> = rows.iter().map(Row::cells).collect();
            let mut widths: Vec<usize> = R::header().iter().map(|h| h.len()).collect();
            for cells in &body {
                for (w, c) in widths.iter_mut().zip(cells) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<String>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(R::header().iter().map(|h| h.to_string()).collect()))?;
            for cells in body {
                writeln!(out, "{}", line(cells))?;
            }
        }
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Pair {
        name: &'static str,
        value: i32,
    }

    impl Row for Pair {
        fn header() -> &'static [&'static str] {
            &["name", "value"]
        }
        fn cells(&self) -> Vec<String> {
            vec![self.name.to_string(), self.value.to_string()]
        }
    }

    fn render(format: Format) -> String {
        let rows = [Pair { name: "a", value: 1 }, Pair { name: "bbb", value: 22 }];
        let mut out = Vec::new();
        write_rows(&rows, format, &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(render(Format::Csv), "name,value\na,1\nbbb,22\n");
        assert_eq!(render(Format::Json), "{\"name\":\"a\",\"value\":1}\n{\"name\":\"bbb\",\"value\":22}\n");
        assert_eq!(render(Format::Table), "name  value\n   a      1\n bbb     22\n");
    }
}
