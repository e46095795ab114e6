#include "sonic/ode.hpp"

#include <sstream>

#include "sonic/error.hpp"

namespace sonic::ode {

void throw_step_failure(double t, double h, const char* why) {
  std::ostringstream os;
  os << "ODE integrator failed at t=" << t << " (h=" << h << "): " << why;
  throw StepFailure(os.str());
}

}  // namespace sonic::ode
