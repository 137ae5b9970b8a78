#!/usr/bin/env node
/** Executable entry point; kept separate so tests can import the CLI logic. */

import { runCli } from "./cli";

runCli(process.argv.slice(2)).then(
  (code) => process.exit(code),
  (err) => {
    console.error(`error: ${(err as Error).message}`);
    process.exit(1);
  },
);
