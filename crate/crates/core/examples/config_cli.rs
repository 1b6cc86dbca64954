//! Drive the command layer in-process from a TOML description.

use linear_diffusion::cli::{run, ConfigDocument};

const CONFIG: &str = r#"
id = "bm_unit"

[state_space]
a = 0
b = 1

[[effective_intervals]]
interval = { a = 0, b = 1 }
scale = { kind = "natural" }
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = ConfigDocument::parse(CONFIG)?;
    println!("digest {}", doc.digest());

    let path = std::env::temp_dir().join("lindiff_example_bm_unit.toml");
    std::fs::write(&path, CONFIG)?;
    let p = path.to_string_lossy().into_owned();
    for args in [
        vec!["lindiff", "--config", &p, "validate"],
        vec!["lindiff", "--config", &p, "core"],
        vec!["lindiff", "--config", &p, "--format", "csv", "hitprob", "--start", "1/4", "--left", "0", "--right", "1"],
    ] {
        let out = run(args.clone());
        println!("$ {} -> exit {}", args[3..].join(" "), out.code);
        print!("{}", out.stdout);
    }
    let _ = std::fs::remove_file(&path);
    Ok(())
}

