//! Interactive loop over a [`Session`].

use std::io::{self, BufRead, Write};

use crate::session::Session;

/// Reads commands until end of input or `quit`/`exit`, writing each
/// transcript chunk as it is produced. `prompt` is printed before every
/// read when set.
pub fn run<R: BufRead, W: Write>(
    session: &mut Session,
    input: R,
    mut output: W,
    prompt: Option<&str>,
) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        if let Some(p) = prompt {
            write!(output, "{p}")?;
            output.flush()?;
        }
        let Some(line) = lines.next().transpose()? else {
            break;
        };
        if matches!(line.trim(), "quit" | "exit") {
            break;
        }
        output.write_all(session.execute(&line).as_bytes())?;
    }
    output.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_flock;
    use crate::session::Options;

    #[test]
    fn stops_at_quit() {
        let mut s = Session::new(parse_flock("{ A ; B }").unwrap(), Options::default());
        let mut out = Vec::new();
        run(&mut s, "contract A\nundo\nquit\ncontract B\n".as_bytes(), &mut out, Some("? ")).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("? > contract A\n{ B }\n"), "{text}");
        assert!(text.contains("undid: contract A"));
        assert!(!text.contains("contract B"));
        assert_eq!(s.current(), &parse_flock("{ A ; B }").unwrap());
    }
}
