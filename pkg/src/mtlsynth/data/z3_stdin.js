// Minimal SMT-LIB2 front end: read a script on stdin, evaluate it with the
// z3 WebAssembly build (npm package "z3-solver"), print the result on stdout.
// Install the package locally or globally (`npm install -g z3-solver`); the
// caller sets NODE_PATH when the package is not resolvable from here.
const { init } = require("z3-solver");

async function main() {
  const chunks = [];
  for await (const chunk of process.stdin) chunks.push(chunk);
  const script = Buffer.concat(chunks).toString("utf8");
  const { Z3 } = await init();
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  const out = await Z3.eval_smtlib2_string(ctx, script);
  process.stdout.write(out);
  process.exit(0);
}

main().catch((err) => {
  console.error(String(err));
  process.exit(1);
});
