#pragma once

namespace bmatch {

int cli_main(int argc, char** argv);

}  // namespace bmatch
