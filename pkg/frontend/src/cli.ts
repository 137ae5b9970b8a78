/** Command-line wrapper around directory rendering. */

import yargs from "yargs";

import { OutputFormat, renderRunDirectory } from "./render";

/** Thrown by the yargs fail handler to stop parsing after a usage error. */
class UsageFailure extends Error {}

export async function runCli(argv: string[]): Promise<number> {
  let exitCode = 0;
  const parser = yargs(argv)
    .scriptName("nspsim-figures")
    .usage("$0 render --run-dir DIR [--out DIR] [--format svg|png]")
    .command(
      "render",
      "render objective-surface figures from a simulator run directory",
      (cmd) =>
        cmd
          .option("run-dir", {
            type: "string",
            demandOption: true,
            describe: "directory holding surfaces_{angle,delay,doppler}.csv",
          })
          .option("out", {
            type: "string",
            describe: "output directory (default: <run-dir>/figures)",
          })
          .option("format", {
            choices: ["svg", "png"] as const,
            default: "svg" as OutputFormat,
            describe: "output image format",
          }),
      async (args) => {
        const results = await renderRunDirectory({
          runDir: args["run-dir"],
          outDir: args.out,
          format: args.format,
        });
        for (const result of results) {
          if (result.error) {
            console.error(`error: ${result.axis}: ${result.error}`);
            exitCode = 1;
          } else {
            console.log(`wrote ${result.outputPath}`);
          }
        }
      },
    )
    .demandCommand(1, "specify a command (render)")
    .strict()
    .fail((msg, err) => {
      console.error(`error: ${msg ?? err?.message}`);
      throw new UsageFailure(msg ?? String(err));
    })
    .exitProcess(false)
    .help();

  try {
    await parser.parseAsync();
  } catch (err) {
    if (err instanceof UsageFailure) {
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  return exitCode;
}
