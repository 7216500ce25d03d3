package app;

import org.junit.Test;

import static org.junit.Assert.assertEquals;

public class CartTest {
    @Test
    public void exercisesAddAndTotal() {
        Cart cart = new Cart();
        cart.add(3);
        int observed = cart.total();
        int expected = 3;
        assertEquals(expected, observed);
    }

    @Test
    public void exercisesOnlyCount() {
        Cart cart = new Cart();
        int observed = cart.count();
        int expected = 0;
        assertEquals(expected, observed);
    }
}
