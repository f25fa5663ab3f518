use contrakit::cli::request::{parse_format, Format, USAGE};
use contrakit::cli::{self, dispatch, parse_request};

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let format = parse_format(&argv);
    // Strip the format flag before command parsing.
    let mut filtered = Vec::with_capacity(argv.len());
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--format" {
            let _ = it.next();
            continue;
        }
        filtered.push(a.clone());
    }

    let request = match parse_request(&filtered) {
        Ok(r) => r,
        Err(e) => {
            if filtered.first().map(String::as_str) == Some("help")
                || filtered.iter().any(|a| a == "--help" || a == "-h")
                || filtered.is_empty()
            {
                println!("{USAGE}");
                std::process::exit(cli::EXIT_OK);
            }
            eprintln!("usage error: {e}");
            std::process::exit(cli::EXIT_USAGE);
        }
    };

    let report = dispatch(&request);
    let echo = filtered.join(" ");
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report.to_json(&echo)).unwrap())
        }
        Format::Text => {
            print!("{}", report.render_text());
            if report.success() {
                println!("ok");
            }
        }
    }
    std::process::exit(if report.success() {
        cli::EXIT_OK
    } else {
        cli::EXIT_CHECK_FAILED
    });
}
