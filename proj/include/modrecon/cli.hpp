#ifndef MODRECON_CLI_HPP
#define MODRECON_CLI_HPP

namespace modrecon {

// Entry point behind the modrecon binary; also callable from tests.
// Exit codes: 0 success, 1 validation/usage error, 2 runtime failure.
int cli_main(int argc, const char* const* argv);

}  // namespace modrecon

#endif
