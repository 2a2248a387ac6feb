"""Driving the command line tool.

Every computation is available as a subcommand on a problem file.  The
bundled corpus carries its expected values as ``# expect`` comments and the
``corpus`` command checks all of them.
"""

import json
import subprocess
import sys

from germlab.cli import corpus_dir


def germlab(*args):
    res = subprocess.run([sys.executable, "-m", "germlab.cli", *args], capture_output=True, text=True)
    return res.returncode, res.stdout


final = corpus_dir() / "final.germ"
print(final.read_text())

code, out = germlab("mond", str(final))
print(f"$ germlab mond final.germ   (exit {code})\n{out}")

code, out = germlab("mu", str(corpus_dir() / "legreuel.germ"), "--json", "--seed", "3")
print("JSON result:", json.loads(out)["result"])

code, out = germlab("corpus", "--jobs", "2")
print(out.strip().splitlines()[-1], f"(exit {code})")
