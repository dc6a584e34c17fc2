#pragma once

namespace cuspdim {

/*
 * Command-line driver.  Returns a process exit code:
 *   0  success
 *   1  usage error (bad flags, invalid space/weight/range)
 *   2  computation or certification failure (a verified inequality failed,
 *      a certificate could not be built within its configured ceiling, or a
 *      resource budget was exceeded)
 *   3  input/output failure (cache files, output files)
 */
int run_cli(int argc, const char* const* argv);

}  // namespace cuspdim
