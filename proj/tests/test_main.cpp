#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "support.hpp"

namespace {

// Each test draws from its own stream, so a test sees the same samples
// whether it runs alone or inside the full binary.
class Reseed : public ::testing::EmptyTestEventListener {
 public:
  explicit Reseed(std::uint64_t base) : base_(base) {}
  void OnTestStart(const ::testing::TestInfo& info) override {
    std::uint64_t h = 1469598103934665603ull ^ base_;
    for (char c : std::string(info.test_suite_name()) + "." + info.name()) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    cspace::testing::rng().seed(h);
  }

 private:
  std::uint64_t base_;
};

}  // namespace

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  const char* env = std::getenv("CSPACE_TEST_SEED");
  ::testing::UnitTest::GetInstance()->listeners().Append(new Reseed(env ? std::strtoull(env, nullptr, 10) : 0));
  return RUN_ALL_TESTS();
}
