//! In-memory output files and their on-disk materialisation.

use std::fs;
use std::io;
use std::path::Path;

/// A named output file held in memory until written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: Vec<u8>,
}

impl Artifact {
    pub fn text(name: impl Into<String>, contents: String) -> Self {
        Artifact {
            name: name.into(),
            contents: contents.into_bytes(),
        }
    }
}

/// 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV body behind a comment header. Fields are written as given.
pub fn csv_artifact<I, R>(
    name: &str,
    header: &str,
    columns: &[&str],
    rows: I,
) -> csv::Result<Artifact>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(header.as_bytes().to_vec());
    writer.write_record(columns)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let contents = writer
        .into_inner()
        .map_err(|e| csv::Error::from(io::Error::other(e.to_string())))?;
    Ok(Artifact {
        name: name.to_string(),
        contents,
    })
}

/// Plain-text (P2) grayscale image; `values` is row-major, `width` per row,
/// scaled so the largest value maps to 255. Header comments follow the
/// magic number, as the format requires.
pub fn pgm_artifact(name: &str, header: &str, width: usize, values: &[f64]) -> Artifact {
    let height = values.len() / width;
    let max = values.iter().copied().fold(0.0f64, f64::max);
    let mut out = String::from("P2\n");
    out.push_str(header);
    out.push_str(&format!("{width} {height}\n255\n"));
    for row in values.chunks(width) {
        let line: Vec<String> = row
            .iter()
            .map(|v| {
                let level = if max > 0.0 {
                    (255.0 * v / max).round()
                } else {
                    0.0
                };
                (level as u8).to_string()
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Artifact::text(name, out)
}

/// Writes every artifact under `dir`, creating subdirectories as needed.
pub fn write_all(dir: &Path, artifacts: &[Artifact]) -> io::Result<()> {
    for a in artifacts {
        let path = dir.join(&a.name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, &a.contents)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_17_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(-2.0), "-2.0000000000000000e0");
        let v = 1.0 / 3.0;
        assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn csv_layout() {
        let a = csv_artifact(
            "t.csv",
            "# h\n",
            &["a", "b"],
            vec![vec!["1".to_string(), fmt_float(0.5)]],
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(a.contents).unwrap(),
            "# h\na,b\n1,5.0000000000000000e-1\n"
        );
    }

    #[test]
    fn pgm_layout() {
        let a = pgm_artifact("d.pgm", "# h\n", 2, &[0.0, 1.0, 0.5, 0.25]);
        assert_eq!(
            String::from_utf8(a.contents).unwrap(),
            "P2\n# h\n2 2\n255\n0 255\n128 64\n"
        );
    }
}
