#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    std::cout << "usage: symplectica VERB [--input FILE|-] [--seed N] [--trials N] [--budget N]\n"
                 "                  [--p P --s S --N N] [--route R] [--json]\nverbs:";
    for (const auto& v : symplectica::cli::verbs()) std::cout << ' ' << v;
    std::cout << '\n';
    return args.empty() ? 1 : 0;
  }
  const auto result = symplectica::cli::run(args, std::cin);
  (result.status == symplectica::cli::Status::Error ? std::cerr : std::cout) << symplectica::cli::render(result);
  return symplectica::cli::exit_code(result.status);
}
