package app;

import java.util.ArrayList;
import java.util.List;

public class Cart {
    private final List<Integer> items = new ArrayList<Integer>();

    public void add(int price) {
        items.add(price);
    }

    public int total() {
        int sum = 0;
        for (Integer price : items) {
            sum += price;
        }
        return sum;
    }

    public int count() {
        return items.size();
    }
}
