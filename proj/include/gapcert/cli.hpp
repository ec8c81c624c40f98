#pragma once

namespace gapcert {

/// Command-line front end. Exit codes: 0 success/Certified, 2 NotCertifiable,
/// 3 input error, 4 internal contradiction.
int cli_main(int argc, const char* const* argv);

}  // namespace gapcert
