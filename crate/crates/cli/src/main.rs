mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::thread;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use facecrypt::analysis::{differential_test, image_metrics, ImageMetrics};
use facecrypt::{decrypt, encrypt};

use io::{ImageFormat, Input};

#[derive(Parser)]
#[command(
    name = "facecrypt",
    version,
    about = "Edge-aware chaotic image encryption"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt a grayscale PGM/PNG image into a `.face` container.
    Encrypt {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        force: bool,
    },
    /// Decrypt a `.face` container back into an image.
    Decrypt {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        force: bool,
        /// Output format; defaults to the output file extension, then PGM.
        #[arg(long, value_enum)]
        format: Option<ImageFormat>,
    },
    /// Print entropy, adjacent-pixel correlation and chi-square.
    ///
    /// Images are measured as-is. For containers the cipher pixels are
    /// measured; with a key, the decrypted image is measured as well.
    Analyze {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        key: OptionalKeyArgs,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
    },
    /// Encrypt an image and a one-bit variant of it; print NPCR/UACI.
    Difftest {
        input: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
        /// Pixel and bit to toggle, as `ROW,COL[,BIT]`.
        #[arg(long, default_value = "0,0,0")]
        flip: Flip,
        /// Where to write the difference image (default: `<input>.diff.<format>`).
        #[arg(long)]
        diff_out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum)]
        format: Option<ImageFormat>,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct KeyArgs {
    /// 32-byte key as 64 hex characters.
    #[arg(long)]
    key_hex: Option<String>,
    #[arg(long)]
    passphrase: Option<String>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalKeyArgs {
    /// 32-byte key as 64 hex characters.
    #[arg(long)]
    key_hex: Option<String>,
    #[arg(long)]
    passphrase: Option<String>,
}

fn key_bytes(key_hex: Option<&str>, passphrase: Option<&str>) -> Result<Option<Vec<u8>>> {
    match (key_hex, passphrase) {
        (Some(h), _) => {
            if h.len() != 64 {
                bail!(
                    "--key-hex must be exactly 64 hex characters, got {}",
                    h.len()
                );
            }
            Ok(Some(hex::decode(h).context("--key-hex is not valid hex")?))
        }
        (None, Some("")) => bail!("--passphrase must not be empty"),
        (None, Some(p)) => Ok(Some(p.as_bytes().to_vec())),
        (None, None) => Ok(None),
    }
}

impl KeyArgs {
    fn bytes(&self) -> Result<Vec<u8>> {
        Ok(
            key_bytes(self.key_hex.as_deref(), self.passphrase.as_deref())?
                .expect("clap requires one key flag"),
        )
    }
}

impl OptionalKeyArgs {
    fn bytes(&self) -> Result<Option<Vec<u8>>> {
        key_bytes(self.key_hex.as_deref(), self.passphrase.as_deref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Text,
    Kv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Flip {
    row: usize,
    col: usize,
    bit: u8,
}

impl FromStr for Flip {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let num = |p: &str| {
            p.parse::<usize>()
                .map_err(|e| format!("bad number {p:?}: {e}"))
        };
        let (row, col, bit) = match parts[..] {
            [r, c] => (num(r)?, num(c)?, 0),
            [r, c, b] => (num(r)?, num(c)?, num(b)?),
            _ => return Err("expected ROW,COL[,BIT]".into()),
        };
        if bit > 7 {
            return Err(format!("bit must be 0..=7, got {bit}"));
        }
        Ok(Self {
            row,
            col,
            bit: bit as u8,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("facecrypt: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Encrypt {
            input,
            output,
            key,
            force,
        } => {
            let img = io::read_image(&input)?;
            let container = encrypt(&img, &key.bytes()?)?;
            io::write_output(&output, &container.serialize()?, force)
        }
        Command::Decrypt {
            input,
            output,
            key,
            force,
            format,
        } => {
            let container = io::read_container(&input)?;
            let img = decrypt(&container, &key.bytes()?)
                .with_context(|| format!("cannot decrypt {}", input.display()))?;
            let format = ImageFormat::resolve(format, &output);
            io::write_output(&output, &io::encode_image(&img, format)?, force)
        }
        Command::Analyze {
            inputs,
            key,
            report,
        } => analyze(&inputs, key.bytes()?.as_deref(), report),
        Command::Difftest {
            input,
            key,
            flip,
            diff_out,
            force,
            format,
            report,
        } => {
            let img = io::read_image(&input)?;
            let r = differential_test(&img, &key.bytes()?, flip.row, flip.col, flip.bit)?;
            let format = match (&diff_out, format) {
                (Some(p), f) => ImageFormat::resolve(f, p),
                (None, f) => f.unwrap_or(ImageFormat::Pgm),
            };
            let out = diff_out.unwrap_or_else(|| default_diff_path(&input, format));
            io::write_output(&out, &io::encode_image(&r.diff_image, format)?, force)?;
            match report {
                Report::Text => {
                    println!("flip    row {} col {} bit {}", flip.row, flip.col, flip.bit);
                    println!("NPCR    {:.4}%", r.npcr_percent);
                    println!("UACI    {:.4}%", r.uaci_percent);
                    println!("diff    {}", out.display());
                }
                Report::Kv => {
                    println!("npcr_percent={}", r.npcr_percent);
                    println!("uaci_percent={}", r.uaci_percent);
                }
            }
            Ok(())
        }
    }
}

fn default_diff_path(input: &Path, format: ImageFormat) -> PathBuf {
    let stem = input.file_stem().unwrap_or_default().to_string_lossy();
    input.with_file_name(format!("{stem}.diff.{}", format.extension()))
}

/// Metrics for one input file: one section per measured image.
fn analyze_file(path: &Path, key: Option<&[u8]>) -> Result<Vec<(&'static str, ImageMetrics)>> {
    match io::read_input(path)? {
        Input::Image(img) => Ok(vec![("image", image_metrics(&img))]),
        Input::Container(c) => {
            let mut out = vec![("cipher", image_metrics(&c.cipher_image()?))];
            if let Some(key) = key {
                let plain = decrypt(&c, key)
                    .with_context(|| format!("cannot decrypt {}", path.display()))?;
                out.push(("plain", image_metrics(&plain)));
            }
            Ok(out)
        }
    }
}

fn analyze(inputs: &[PathBuf], key: Option<&[u8]>, report: Report) -> Result<()> {
    let results: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|p| s.spawn(move || analyze_file(p, key)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect()
    });

    let single = inputs.len() == 1;
    let mut out = String::new();
    for (path, result) in inputs.iter().zip(results) {
        let sections = result?;
        let multi = sections.len() > 1;
        for (kind, m) in sections {
            match report {
                Report::Text => {
                    out += &format!("== {} ({kind}) ==\n{}", path.display(), m.to_text());
                }
                Report::Kv if single && !multi => out += &m.to_kv(),
                Report::Kv => out += &format!("[{}:{kind}]\n{}", path.display(), m.to_kv()),
            }
        }
    }
    print!("{out}");
    Ok(())
}
