fn main() {
    println!("altmod");
}
