#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <typeindex>
#include <typeinfo>
#include <utility>

namespace cspp {

/// Whether copying a T yields a fully independent (deep) copy. Defaults to
/// copy-constructibility; specialise to std::false_type for types whose copy
/// constructor shares state, which then cannot pass through cast spreaders.
template <class T>
struct deep_cloneable : std::is_copy_constructible<T> {};

class CloneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PayloadTypeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Single-owner, type-erased application object carried by a Data message.
/// Move-only: handing a Payload to a channel hands over the object.
class Payload {
 public:
  Payload() = default;

  template <class T, class D = std::decay_t<T>,
            std::enable_if_t<!std::is_same_v<D, Payload>, int> = 0>
  explicit Payload(T&& value) : self_(std::make_unique<Model<D>>(std::forward<T>(value))) {}

  Payload(Payload&&) noexcept = default;
  Payload& operator=(Payload&&) noexcept = default;
  Payload(const Payload&) = delete;
  Payload& operator=(const Payload&) = delete;

  template <class T, class... Args>
  static Payload make(Args&&... args) {
    Payload p;
    p.self_ = std::make_unique<Model<T>>(std::in_place, std::forward<Args>(args)...);
    return p;
  }

  bool has_value() const noexcept { return static_cast<bool>(self_); }

  std::type_index type() const noexcept {
    return self_ ? self_->type() : std::type_index(typeid(void));
  }

  template <class T>
  bool holds() const noexcept {
    return self_ && self_->type() == std::type_index(typeid(T));
  }

  template <class T>
  T* get_if() noexcept {
    return holds<T>() ? static_cast<T*>(self_->address()) : nullptr;
  }

  template <class T>
  const T* get_if() const noexcept {
    return holds<T>() ? static_cast<const T*>(self_->address()) : nullptr;
  }

  template <class T>
  T& as() {
    if (T* p = get_if<T>()) return *p;
    throw PayloadTypeError(std::string("payload does not hold ") + typeid(T).name());
  }

  template <class T>
  const T& as() const {
    if (const T* p = get_if<T>()) return *p;
    throw PayloadTypeError(std::string("payload does not hold ") + typeid(T).name());
  }

  bool cloneable() const noexcept { return self_ && self_->cloneable(); }

  /// Deep copy. Throws CloneError when the held type is not deep_cloneable.
  Payload clone() const {
    if (!self_) return Payload();
    Payload p;
    p.self_ = self_->clone();
    return p;
  }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual std::unique_ptr<Concept> clone() const = 0;
    virtual bool cloneable() const noexcept = 0;
    virtual std::type_index type() const noexcept = 0;
    virtual void* address() noexcept = 0;
    virtual const void* address() const noexcept = 0;
  };

  template <class T>
  struct Model final : Concept {
    template <class... Args>
    explicit Model(std::in_place_t, Args&&... args) : value(std::forward<Args>(args)...) {}
    template <class U>
    explicit Model(U&& v) : value(std::forward<U>(v)) {}

    std::unique_ptr<Concept> clone() const override {
      if constexpr (deep_cloneable<T>::value) {
        return std::make_unique<Model>(std::in_place, value);
      } else {
        throw CloneError(std::string("payload type is not deep-cloneable: ") + typeid(T).name());
      }
    }
    bool cloneable() const noexcept override { return deep_cloneable<T>::value; }
    std::type_index type() const noexcept override { return typeid(T); }
    void* address() noexcept override { return &value; }
    const void* address() const noexcept override { return &value; }

    T value;
  };

  std::unique_ptr<Concept> self_;
};

}  // namespace cspp
